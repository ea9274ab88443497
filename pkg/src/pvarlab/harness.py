"""Corpus assembly, inequality suites, sharpness sweeps and report persistence."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .grid import (
    Exponent,
    Grid1,
    Grid2,
    gen_cumulative,
    gen_product,
    gen_series_f,
    gen_sine,
    gen_staircase,
    gen_tent_scaled,
    gen_trigpoly,
)
from .mixednorm import section_lipschitz_check, w_p, w_p_estimate_check
from .modulus import (
    lp_norm,
    modulus_1d,
    modulus_iso_2d,
    modulus_mixed,
    averaged_modulus_check,
    diff_modulus_bound_check,
    omega_sandwich_check,
)
from .pvar1d import pvar_cyclic, pvar_oracle
from .smoothness import chain_check, decompose_lp0, integral_I, integral_J, integral_K
from .vitali2d import (
    ORACLE_MAX_SIDE,
    staircase_net_bound,
    vitali_ascent,
    vitali_finest,
    vitali_oracle,
)

__all__ = [
    "SuiteConfig",
    "CheckReport",
    "run_suite",
    "hardy_littlewood_check",
    "embedding_1d_check",
    "main_estimate_check",
    "sharpness_sweep",
    "random_corpus_1d",
    "random_corpus_2d",
    "sweep_rows_to_csv",
]

TOL = 1e-9


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 7
    families: tuple[str, ...] = ("generators", "random", "separation", "sweeps")
    p_grid: tuple[float, ...] = (1.1, 1.5, 2.0, 3.0, 8.0)
    size_1d: int = 64
    size_2d: int = 32
    n_random_1d: int = 6
    n_random_2d: int = 4
    oracle_n_1d: int = 10
    oracle_side_2d: int = 5
    oracle_trials: int = 40

    def validate(self) -> None:
        if self.oracle_n_1d > 18 or self.oracle_side_2d > ORACLE_MAX_SIDE:
            raise ValueError("oracle sizes exceed hard limits")
        if self.size_2d > 128:
            raise ValueError("2D corpus size exceeds the mixed-table cap")


@dataclass
class CheckReport:
    meta: dict
    checks: list = field(default_factory=list)
    sweeps: list = field(default_factory=list)

    def add(self, id: str, anchor: str, inputs: str, lhs: float, rhs: float,
            tolerance: float = TOL) -> None:
        margin = rhs - lhs
        self.checks.append(
            {
                "id": id,
                "paper_anchor": anchor,
                "inputs": inputs,
                "lhs": lhs,
                "rhs": rhs,
                "margin": margin,
                "tolerance": tolerance,
                "pass": bool(margin >= -tolerance),
            }
        )

    def add_failure(self, id: str, anchor: str, inputs: str, message: str) -> None:
        self.checks.append(
            {
                "id": id,
                "paper_anchor": anchor,
                "inputs": inputs,
                "lhs": None,
                "rhs": None,
                "margin": None,
                "tolerance": TOL,
                "pass": False,
                "error": message,
            }
        )

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_dict(self) -> dict:
        return {"meta": self.meta, "checks": self.checks, "sweeps": self.sweeps}


# ---------------------------------------------------------------- corpora


def random_corpus_1d(rng: np.random.Generator, n: int, count: int) -> list[tuple[str, Grid1]]:
    """Seeded piecewise-constant and piecewise-linear functions with few jumps."""
    out = []
    for k in range(count):
        jumps = int(rng.integers(2, 7))
        pos = np.sort(rng.choice(n, size=jumps, replace=False))
        levels = rng.normal(size=jumps)
        vals = np.zeros(n)
        for j in range(jumps):
            lo = pos[j]
            hi = pos[(j + 1) % jumps] if j + 1 < jumps else n
            vals[lo:hi] = levels[j]
        vals[: pos[0]] = levels[-1]
        if k % 2:  # piecewise linear variant: integrate and recentre
            vals = np.cumsum(vals - vals.mean()) / n
        out.append((f"random1d_{k}", Grid1(vals)))
    return out


def random_corpus_2d(rng: np.random.Generator, m: int, n: int, count: int) -> list[tuple[str, Grid2]]:
    """Sums of a few random rectangles (piecewise-constant fields)."""
    out = []
    for k in range(count):
        a = np.zeros((m, n))
        for _ in range(int(rng.integers(3, 7))):
            i0, i1 = np.sort(rng.integers(0, m, size=2))
            j0, j1 = np.sort(rng.integers(0, n, size=2))
            a[i0 : i1 + 1, j0 : j1 + 1] += rng.normal()
        out.append((f"random2d_{k}", Grid2(a)))
    return out


def _corpus_1d(cfg: SuiteConfig, rng: np.random.Generator) -> list[tuple[str, Grid1]]:
    n = cfg.size_1d
    out = [(f"tent{k}", gen_tent_scaled(k, n)) for k in (1, 2, 4, 8) if n % (2 * k) == 0]
    out += [(f"sine{k}", gen_sine(k, n)) for k in (1, 2, 4) if n % (4 * k) == 0]
    half = np.r_[np.ones(n // 2), -np.ones(n - n // 2)]
    out.append(("step", Grid1(half)))
    out += random_corpus_1d(rng, n, cfg.n_random_1d)
    return out


def _corpus_2d(cfg: SuiteConfig, rng: np.random.Generator) -> list[tuple[str, Grid2]]:
    n = cfg.size_2d
    out = [
        ("t1xt1", gen_product(gen_sine(1, n), gen_sine(1, n))),
        ("tent2xsine1", gen_product(gen_tent_scaled(2, n), gen_sine(1, n))),
        ("staircase", gen_staircase(n)),
        ("series_m3", gen_series_f(3, Exponent(2.0), max(n, 32))),
    ]
    out += random_corpus_2d(rng, n, n, cfg.n_random_2d)
    return out


# ---------------------------------------------------------------- checks


def hardy_littlewood_check(f: Grid2) -> dict:
    """sup over grid shifts of omega(u,v)_1 / (uv) against the finest-net 1-variation.

    The sup of the prefix-max table over (u, v) equals the sup of the raw
    shift-norm ratios, so the table itself is never materialized.
    """
    a = f.samples
    m, n = a.shape
    s_best = 0.0
    for s in range(1, m):
        ds = np.roll(a, -s, axis=0) - a
        u = s / m
        for t in range(1, n):
            d = np.roll(ds, -t, axis=1) - ds
            val = float(np.mean(np.abs(d))) / (u * (t / n))
            if val > s_best:
                s_best = val
    v = vitali_finest(f, Exponent(1.0))
    gap = abs(s_best - v) / v if v > 0 else 0.0
    return {
        "sup_ratio": s_best,
        "v1_finest": v,
        "relative_gap": gap,
        "le_margin": v - s_best,
    }


def embedding_1d_check(g: Grid1, p: Exponent) -> dict:
    """Measured constants for the 1D sup-norm and variation embeddings."""
    if p.p == 1.0:
        raise ValueError("the 1D embedding estimates require p > 1")
    table = modulus_1d(g, p)
    j_hi = integral_J(table).hi
    c = 1.0 / (p.p * p.conj)
    sup = lp_norm(g, math.inf)
    bracket_inf = lp_norm(g, p) + c * j_hi
    var, _ = pvar_cyclic(g, p)
    bracket_var = float(table.values[-1]) + c * j_hi
    out: dict = {"skip": bracket_var == 0.0 and bracket_inf == 0.0}
    out["a_obs_inf"] = sup / bracket_inf if bracket_inf > 0 else None
    out["a_obs_var"] = var / bracket_var if bracket_var > 0 else None
    return out


def main_estimate_check(f: Grid2, p: Exponent) -> dict:
    """Measured constants for the main Vitali-variation and sup-norm estimates.

    Applied to the doubly mean-free core; the Vitali value is the certified
    lower bound (oracle on tiny grids), so the recorded ratios are lower
    bounds on the sharp constant.
    """
    if p.p == 1.0:
        raise ValueError("the main estimate requires p > 1")
    core = decompose_lp0(f).core
    table = modulus_mixed(core, p)
    omega11 = float(table.values[-1, -1])
    k_hi = integral_K(table).hi
    i_hi = integral_I(table).hi
    c = 1.0 / (p.p * p.conj)
    bracket = omega11 + c * k_hi + c * c * i_hi
    if bracket == 0.0:
        return {"skip": True}
    if core.m <= ORACLE_MAX_SIDE and core.n <= ORACLE_MAX_SIDE:
        v2 = vitali_oracle(core, p)
    else:
        v2 = vitali_ascent(core, p).value
    j_hi = integral_J(modulus_iso_2d(core, p)).hi
    bracket_inf = lp_norm(core, p) + c * j_hi + c * c * i_hi
    return {
        "skip": False,
        "a_obs": v2 / bracket,
        "a_obs_inf": lp_norm(core, math.inf) / bracket_inf,
        "terms": {"omega11": omega11, "k_term": c * k_hi, "i_term": c * c * i_hi},
    }


# ---------------------------------------------------------------- sweeps


def _certified_v2_lower(f: Grid2, p: Exponent) -> float:
    if f.m <= ORACLE_MAX_SIDE and f.n <= ORACLE_MAX_SIDE:
        return vitali_oracle(f, p)
    if p.p == 1.0:
        return vitali_finest(f, p)
    return vitali_ascent(f, p).value


def _sweep_row(f: Grid2, p: Exponent, family: str, n: int, m: int) -> dict:
    table = modulus_mixed(f, p)
    omega11 = float(table.values[-1, -1])
    v2 = _certified_v2_lower(f, p)
    values = {"v2_lower": v2, "omega11": omega11}
    if p.p > 1.0:
        k = integral_K(table)
        i = integral_I(table)
        pc = p.conj
        values.update(
            k_lo=k.lo, k_hi=k.hi, i_lo=i.lo, i_hi=i.hi,
            ratio_smallp=v2 * pc**2 / i.hi if i.hi > 0 else None,
            k_term=k.hi / p.p, i_term=i.hi / p.p**2,
        )
    norm = lp_norm(f, p)
    values["norm_p"] = norm
    if norm > 0:
        values["ratio_oskolkov"] = v2 / ((n * m) ** (1.0 / p.p) * norm)
    return {"family": family, "p": p.p, "n": n, "m": m, "values": values}


def sharpness_sweep(
    family: str,
    p_grid: tuple[float, ...],
    n_grid: tuple[int, ...],
    size: int = 64,
    seed: int = 0,
) -> list[dict]:
    """Diagnostic ratios behind the sharpness remarks, per (p, n) pair.

    Families: t1xt1, tnxt1, tnxtn (sine products) and trigpoly (seeded
    random coefficients of degree (n, m)).
    """
    rows = []
    rng = np.random.default_rng(seed)
    for p in p_grid:
        pe = Exponent(p)
        if family == "t1xt1":
            f = gen_product(gen_sine(1, size), gen_sine(1, size))
            rows.append(_sweep_row(f, pe, family, 1, 1))
        elif family == "tnxt1":
            for n in n_grid:
                if size % (4 * n):
                    raise ValueError(f"size {size} misaligned for sine frequency {n}")
                f = gen_product(gen_sine(n, size), gen_sine(1, size))
                rows.append(_sweep_row(f, pe, family, n, 1))
        elif family == "tnxtn":
            for n in n_grid:
                if size % (4 * n):
                    raise ValueError(f"size {size} misaligned for sine frequency {n}")
                f = gen_product(gen_sine(n, size), gen_sine(n, size))
                rows.append(_sweep_row(f, pe, family, n, n))
        elif family == "trigpoly":
            for n in n_grid:
                for m in n_grid:
                    if size <= 2 * n or size <= 2 * m:
                        raise ValueError(f"size {size} misaligned for degree ({n},{m})")
                    shape = (n + 1, m + 1)
                    coef = [rng.normal(size=shape) for _ in range(4)]
                    f, _ = gen_trigpoly(*coef, size, size)
                    rows.append(_sweep_row(f, pe, family, n, m))
        else:
            raise ValueError(f"unknown sweep family {family!r}")
    return rows


def sweep_rows_to_csv(rows: list[dict]) -> str:
    lines = ["family,p,n,key,value"]
    for r in rows:
        tag = r["n"] if r["n"] == r["m"] else f"{r['n']}x{r['m']}"
        for key, value in sorted(r["values"].items()):
            if value is None:
                continue
            lines.append(f"{r['family']},{r['p']},{tag},{key},{value!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- suite


def _meta(cfg: SuiteConfig) -> dict:
    return {
        "version": __version__,
        "seed": cfg.seed,
        "timestamp": os.environ.get("PVARLAB_TIMESTAMP", "1970-01-01T00:00:00Z"),
        "size_1d": cfg.size_1d,
        "size_2d": cfg.size_2d,
        "p_grid": list(cfg.p_grid),
    }


def run_suite(cfg: SuiteConfig) -> CheckReport:
    """Run every inequality/identity suite on the seeded corpus.

    Sub-check exceptions are caught and recorded as failed checks; the
    report passes iff every check passes.
    """
    cfg.validate()
    report = CheckReport(meta=_meta(cfg))
    if not cfg.families:
        return report
    rng = np.random.default_rng(cfg.seed)
    run_random = "random" in cfg.families
    corpus1 = _corpus_1d(cfg, rng) if ("generators" in cfg.families or run_random) else []
    corpus2 = _corpus_2d(cfg, rng) if ("generators" in cfg.families or run_random) else []
    if not run_random:
        corpus1 = [c for c in corpus1 if not c[0].startswith("random")]
        corpus2 = [c for c in corpus2 if not c[0].startswith("random")]
    p_small = [p for p in cfg.p_grid if p > 1.0]

    def guarded(check_id, anchor, fn):
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - a panic becomes a failed check
            report.add_failure(check_id, anchor, "-", f"{type(exc).__name__}: {exc}")

    # 1. generator sanity: closed-form variation of aligned generators
    def gen_sanity():
        for p in (1.0, 2.0):
            pe = Exponent(p)
            for k in (1, 2, 4):
                if cfg.size_1d % (2 * k):
                    continue
                v, _ = pvar_cyclic(gen_tent_scaled(k, cfg.size_1d), pe)
                exact = 2.0 ** (1.0 / p - 1.0) * k ** (1.0 / p)
                report.add(
                    f"tent_formula_p{p}_n{k}",
                    "v_p(tent_n) = 2^(1/p-1) n^(1/p)",
                    f"tent n={k} N={cfg.size_1d}",
                    abs(v - exact),
                    0.0,
                    tolerance=1e-12,
                )

    guarded("generator_sanity", "closed-form variation of aligned generators", gen_sanity)

    # 1b. mixed-derivative Bernstein bound for trigonometric polynomials
    def bernstein():
        worst = 0.0
        for _ in range(4):
            deg_x, deg_y = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            coef = [rng.normal(size=(deg_x + 1, deg_y + 1)) for _ in range(4)]
            T, D = gen_trigpoly(*coef, cfg.size_2d, cfg.size_2d)
            for p in cfg.p_grid:
                denom = 4.0 * math.pi**2 * deg_x * deg_y * lp_norm(T, p)
                if denom > 0:
                    worst = max(worst, lp_norm(D, p) / denom)
        report.add(
            "bernstein_mixed_derivative",
            "||D1D2 T||_p <= 4 pi^2 n m ||T||_p",
            f"random degrees <= 4 on {cfg.size_2d}x{cfg.size_2d}",
            worst,
            1.0,
            tolerance=1e-12,
        )

    guarded("bernstein_mixed_derivative", "mixed Bernstein bound", bernstein)

    # 2. 1D oracle equivalence
    def pvar_equiv():
        worst = 0.0
        for trial in range(cfg.oracle_trials):
            n = int(rng.integers(2, cfg.oracle_n_1d + 1))
            g = Grid1(rng.normal(size=n))
            pe = Exponent((1.0, 1.5, 2.0, 3.0)[trial % 4])
            worst = max(worst, abs(pvar_cyclic(g, pe)[0] - pvar_oracle(g, pe)))
        report.add(
            "pvar_oracle_equivalence",
            "sup over all partitions attained by the anchored chain DP",
            f"{cfg.oracle_trials} random grids, N <= {cfg.oracle_n_1d}",
            worst,
            0.0,
            tolerance=0.0,
        )

    guarded("pvar_oracle_equivalence", "1D supremum", pvar_equiv)

    # 3. 2D oracle equivalence + ascent dominance
    def vitali_equiv():
        worst_eq = 0.0
        worst_exceed = 0.0
        side = cfg.oracle_side_2d
        for trial in range(max(4, cfg.oracle_trials // 4)):
            f = Grid2(rng.normal(size=(side, side)))
            pe = Exponent((1.0, 1.5, 2.0, 3.0)[trial % 4])
            vo = vitali_oracle(f, pe)
            va = vitali_ascent(f, pe).value
            worst_exceed = max(worst_exceed, va - vo)
            if pe.p == 1.0:
                worst_eq = max(worst_eq, abs(vitali_finest(f, pe) - vo))
        report.add(
            "vitali_ascent_le_oracle",
            "every net evaluation is a lower bound for the net supremum",
            f"random {side}x{side} grids",
            worst_exceed,
            0.0,
            tolerance=1e-12,
        )
        report.add(
            "vitali_finest_p1_exact",
            "refinement never decreases a 1-variation of mixed differences",
            f"random {side}x{side} grids",
            worst_eq,
            0.0,
            tolerance=0.0,
        )

    guarded("vitali_oracle_equivalence", "2D supremum", vitali_equiv)

    # 4. Golubov identity for the double primitive
    def golubov():
        for name, f in corpus2[:2] + random_corpus_2d(rng, cfg.size_2d, cfg.size_2d, 1):
            core = decompose_lp0(f).core
            F = gen_cumulative(core)
            lhs = vitali_finest(F, Exponent(1.0))
            rhs = float(np.mean(np.abs(core.samples)))
            report.add(
                f"golubov_identity_{name}",
                "v_1^(2) of the double primitive equals the L^1 norm of the density",
                name,
                abs(lhs - rhs),
                0.0,
                tolerance=1e-12,
            )

    guarded("golubov_identity", "double primitive identity", golubov)

    # 5. modulus invariants
    def modulus_invariants():
        for name, g in corpus1:
            for p in (1.0, 2.0):
                pe = Exponent(p)
                t = modulus_1d(g, pe).values
                mono = float(np.min(np.diff(t)))
                report.add(
                    f"modulus_monotone_{name}_p{p}", "omega nondecreasing", name, -mono, 0.0
                )
                doubling = min(
                    (2 * t[k] - t[2 * k] for k in range(1, t.size // 2)), default=0.0
                )
                report.add(
                    f"modulus_doubling_{name}_p{p}",
                    "omega(2 delta) <= 2 omega(delta)",
                    name,
                    -doubling,
                    0.0,
                    tolerance=1e-12,
                )
                sw = omega_sandwich_check(g, pe)
                report.add(
                    f"omega_sandwich_{name}_p{p}",
                    "Omega_p <= omega(1)_p <= 2 Omega_p",
                    name,
                    -min(sw["lower_margin"], sw["upper_margin"]),
                    0.0,
                )
        for name, f in corpus2[:3]:
            pe = Exponent(2.0)
            t = modulus_mixed(f, pe).values
            ratio_worst = 0.0
            for k2 in range(1, t.shape[0] - 1):
                for k1 in range(k2, t.shape[0]):
                    viol = t[k1, -1] / k1 - 2.0 * t[k2, -1] / k2
                    ratio_worst = max(ratio_worst, viol)
            report.add(
                f"modulus_ratio_bound_{name}",
                "omega(u1,v)/u1 <= 2 omega(u2,v)/u2",
                name,
                ratio_worst,
                0.0,
            )

    guarded("modulus_invariants", "modulus table invariants", modulus_invariants)

    # 6. difference-modulus and averaged-modulus lemmas
    def lemma_checks():
        for name, g in corpus1[:6]:
            r = averaged_modulus_check(g, Exponent(2.0))
            report.add(
                f"averaged_modulus_{name}",
                "omega(delta) <= (3/delta) integral of shift norms",
                name,
                -r["min_margin"],
                0.0,
            )
        for name, f in corpus2[:3]:
            for p in (1.5, 2.0):
                r = diff_modulus_bound_check(f, max(1, f.m // 8), Exponent(p))
                report.add(
                    f"diff_modulus_{name}_p{p}",
                    "omega(D1(h)f; u,v) <= 2 min(omega(f;u,v), omega(f;h,v))",
                    name,
                    -min(r["mixed_min_margin"], r["iso_min_margin"]),
                    0.0,
                )

    guarded("lemma_checks", "first-difference modulus bounds", lemma_checks)

    # 7. integral inequality chain
    def chain():
        for name, f in corpus2:
            for p in p_small:
                for row in chain_check(f, Exponent(p)):
                    report.add(
                        f"chain_{row['id']}_{name}_p{p}",
                        "K <= 4I/p'; omega(1,1) <= 4I/p'^2; J(core) <= 3K(core)",
                        name,
                        row["lhs"],
                        row["rhs"],
                    )

    guarded("chain_check", "integral chain", chain)

    # 8. Hardy-Littlewood p=1
    def hardy_littlewood():
        f = gen_product(gen_sine(1, cfg.size_2d), gen_sine(1, cfg.size_2d))
        r = hardy_littlewood_check(f)
        report.add(
            "hardy_littlewood_gap",
            "v_1^(2) equals the sup of omega(u,v)_1/(uv)",
            f"t1xt1 N={cfg.size_2d}",
            r["relative_gap"],
            0.05,
        )
        report.add(
            "hardy_littlewood_le",
            "omega(u,v)_1 <= v_1^(2) uv",
            f"t1xt1 N={cfg.size_2d}",
            -r["le_margin"],
            0.0,
        )

    guarded("hardy_littlewood", "p=1 characterization", hardy_littlewood)

    # 9. measured constants: finite and stable
    def measured_constants():
        worst = 0.0
        for k in (1, 2, 4):
            if cfg.size_1d % (4 * k):
                continue
            r = embedding_1d_check(gen_sine(k, cfg.size_1d), Exponent(2.0))
            for key in ("a_obs_inf", "a_obs_var"):
                if r[key] is not None:
                    worst = max(worst, r[key])
        report.add(
            "embedding_1d_bounded",
            "sup-norm and variation embeddings with measured constants",
            f"sine family N={cfg.size_1d}",
            worst,
            50.0,
        )
        worst2 = 0.0
        for name, f in corpus2[:3]:
            for p in p_small:
                r = main_estimate_check(f, Exponent(p))
                if not r["skip"]:
                    worst2 = max(worst2, r["a_obs"], r["a_obs_inf"])
        report.add(
            "main_estimate_bounded",
            "v_p^(2) and sup-norm controlled by omega(1,1), K and I",
            "corpus",
            worst2,
            50.0,
        )

    guarded("measured_constants", "measured embedding constants", measured_constants)

    # 10. W_p checks and the separation constructions
    def wp_checks():
        for name, f in corpus2[:3]:
            for p in (1.0, 2.0):
                r = section_lipschitz_check(f, Exponent(p))
                report.add(
                    f"section_lipschitz_{name}_p{p}",
                    "|v_p(f_x'') - v_p(f_x')| <= 2 v_p(difference section)",
                    name,
                    -r["margin"],
                    0.0,
                )
        worst_a = 0.0
        for name, f in corpus2[:3]:
            for p in (1.1, 2.0, 8.0):
                r = w_p_estimate_check(f, Exponent(p))
                if not r["skip"]:
                    worst_a = max(worst_a, r["a_obs"])
        report.add(
            "wp_estimate_bounded",
            "W_p of the core controlled by omega(1,1), K and I",
            "corpus, p in {1.1, 2, 8}",
            worst_a,
            50.0,
        )
        if "separation" in cfg.families:
            p2 = Exponent(2.0)
            for n in (2, 4, 8, 16):
                val = staircase_net_bound(n, p2)
                report.add(
                    f"staircase_net_bound_n{n}",
                    "offset-net mixed sum of the staircase is at least n^(1/p)",
                    f"n={n}",
                    n ** 0.5,
                    val,
                )
            # desk-scale separation: W_p of the staircase is resolution-free
            w16 = w_p(gen_staircase(16), p2)
            w32 = w_p(gen_staircase(32), p2)
            report.add(
                "staircase_wp_stable",
                "section-variation profiles of the staircase are constant off "
                "the degenerate grid sections",
                "N=16 vs N=32",
                abs(w16 - w32),
                0.0,
                tolerance=1e-12,
            )
            finest_prev = None
            for m in range(1, 6):
                f = gen_series_f(m, p2, 2 ** (m + 1) * 2)
                fin = vitali_finest(f, p2)
                if finest_prev is not None and m == 5:
                    report.add(
                        "series_finest_bounded",
                        "Vitali value of the dyadic series stays bounded",
                        "M=4 vs M=5",
                        fin,
                        finest_prev * 1.05,
                    )
                finest_prev = fin

    guarded("wp_checks", "mixed-norm checks", wp_checks)

    # 11. sharpness sweeps
    if "sweeps" in cfg.families:

        def sweeps():
            report.sweeps.extend(
                sharpness_sweep("t1xt1", tuple(p_small), (1,), size=cfg.size_2d)
            )
            report.sweeps.extend(
                sharpness_sweep(
                    "tnxt1",
                    (max(p_small),),
                    tuple(k for k in (1, 2, 4) if cfg.size_2d % (4 * k) == 0),
                    size=cfg.size_2d,
                )
            )
            for row in report.sweeps:
                v = row["values"]
                if row["family"] == "t1xt1" and "i_hi" in v:
                    pc = Exponent(row["p"]).conj
                    report.add(
                        f"sweep_smallp_{row['family']}_p{row['p']}_n{row['n']}",
                        "I_p(t1 x t1) <= 4 pi^2 p'^2",
                        f"{row['family']} p={row['p']}",
                        v["i_hi"],
                        4.0 * math.pi**2 * pc**2,
                    )

        guarded("sharpness_sweeps", "sharpness diagnostics", sweeps)

    return report
