"""Difference operators and L^p moduli of continuity on grids.

Moduli are prefix maxima of exact circular-shift norms; no interpolation
between grid shifts, so every inequality check is exact at grid arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Exponent, Grid1, Grid2
from .pvar1d import omega_p_functional

__all__ = [
    "ModulusTable1D",
    "ModulusTable2D",
    "lp_norm",
    "shift_norm_1d",
    "mixed_diff_norm",
    "modulus_1d",
    "modulus_iso_2d",
    "modulus_mixed",
    "averaged_modulus_check",
    "diff_modulus_bound_check",
    "omega_sandwich_check",
    "MIXED_TABLE_CAP",
]

MIXED_TABLE_CAP = 128


@dataclass(frozen=True)
class ModulusTable1D:
    """values[k] = omega(f; k * step)_p for k = 0..K; nondecreasing, values[0] = 0."""

    values: np.ndarray
    p: Exponent
    step: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def k_max(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class ModulusTable2D:
    """values[k, l] = omega(f; k/M, l/N)_p; zero first row/column, coordinatewise nondecreasing."""

    values: np.ndarray
    p: Exponent
    steps: tuple[float, float]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def slice_u(self) -> ModulusTable1D:
        """omega(f; t, 1) as a function of t."""
        return ModulusTable1D(self.values[:, -1].copy(), self.p, self.steps[0])

    def slice_v(self) -> ModulusTable1D:
        """omega(f; 1, t) as a function of t."""
        return ModulusTable1D(self.values[-1, :].copy(), self.p, self.steps[1])


def _norm(a: np.ndarray, p: float) -> float:
    if math.isinf(p):
        return float(np.max(np.abs(a)))
    s = float(np.mean(np.abs(a) ** p))
    return s if p == 1.0 else s ** (1.0 / p)


def lp_norm(f: Grid1 | Grid2, p: Exponent | float) -> float:
    """Rectangle-rule L^p norm; pass math.inf for the sup norm."""
    pp = p.p if isinstance(p, Exponent) else float(p)
    return _norm(f.samples, pp)


def shift_norm_1d(g: Grid1, s: int, p: Exponent) -> float:
    """||f(. + s/N) - f||_p, exact on the grid."""
    a = g.samples
    return _norm(np.roll(a, -s) - a, p.p)


def mixed_diff_norm(f: Grid2, s_idx: int, t_idx: int, p: Exponent) -> float:
    """L^p norm of the doubly-circular mixed difference at shift (s/M, t/N)."""
    a = f.samples
    d = np.roll(a, (-s_idx, -t_idx), axis=(0, 1)) - np.roll(a, -s_idx, axis=0)
    d -= np.roll(a, -t_idx, axis=1) - a
    return _norm(d, p.p)


def modulus_1d(g: Grid1, p: Exponent) -> ModulusTable1D:
    """omega(f; k/N)_p as the prefix max of circular-shift norms."""
    n = g.n
    norms = np.zeros(n + 1)
    for s in range(1, n + 1):
        norms[s] = shift_norm_1d(g, s % n, p)
    return ModulusTable1D(np.maximum.accumulate(norms), p, 1.0 / n)


def _plain_shift_norms_2d(f: Grid2, p: Exponent) -> np.ndarray:
    """norms[s, t] = ||f(. + (s/M, t/N)) - f||_p for s = 0..M, t = 0..N."""
    a = f.samples
    m, n = a.shape
    out = np.zeros((m + 1, n + 1))
    for s in range(m + 1):
        rs = np.roll(a, -(s % m), axis=0)
        for t in range(n + 1):
            d = np.roll(rs, -(t % n), axis=1) - a
            out[s, t] = _norm(d, p.p)
    return out


def modulus_iso_2d(
    f: Grid2, p: Exponent, cap: int = MIXED_TABLE_CAP, override: bool = False
) -> ModulusTable1D:
    """Isotropic modulus: sup over vector shifts in the sup-norm ball |h| <= delta.

    Grid shifts cover negative h by periodicity.  delta runs over k/K with
    K = max(M, N).
    """
    m, n = f.m, f.n
    if not override and (m > cap or n > cap):
        raise ValueError(f"grid {m}x{n} exceeds cap {cap}; pass override=True")
    norms = _plain_shift_norms_2d(f, p)
    pmax = np.maximum.accumulate(np.maximum.accumulate(norms, axis=0), axis=1)
    K = max(m, n)
    vals = np.zeros(K + 1)
    for k in range(K + 1):
        delta = k / K
        s = min(m, int(math.floor(delta * m + 1e-9)))
        t = min(n, int(math.floor(delta * n + 1e-9)))
        vals[k] = pmax[s, t]
    return ModulusTable1D(vals, p, 1.0 / K)


def modulus_mixed(
    f: Grid2, p: Exponent, cap: int = MIXED_TABLE_CAP, override: bool = False
) -> ModulusTable2D:
    """Mixed modulus table: 2D prefix max over the full shift-norm table.

    Cost is O((MN)^2); grids above the cap are refused without override.
    """
    m, n = f.m, f.n
    if not override and (m > cap or n > cap):
        raise ValueError(f"grid {m}x{n} exceeds cap {cap}; pass override=True")
    a = f.samples
    raw = np.zeros((m + 1, n + 1))
    pp = p.p
    for s in range(1, m + 1):
        ds = np.roll(a, -(s % m), axis=0) - a
        for t in range(1, n + 1):
            d = np.roll(ds, -(t % n), axis=1) - ds
            raw[s, t] = _norm(d, pp)
    table = np.maximum.accumulate(np.maximum.accumulate(raw, axis=0), axis=1)
    return ModulusTable2D(table, p, (1.0 / m, 1.0 / n))


def averaged_modulus_check(g: Grid1, p: Exponent) -> dict:
    """omega(delta) against (3/delta) * integral of shift norms over [0, delta].

    The integral is a trapezoid rule on the grid shift norms.  Returns per-
    delta margins (rhs - lhs) and the minimum margin.
    """
    n = g.n
    norms = np.zeros(n + 1)
    for s in range(1, n + 1):
        norms[s] = shift_norm_1d(g, s % n, p)
    table = np.maximum.accumulate(norms)
    rows = []
    for k in range(1, n + 1):
        delta = k / n
        integral = float(np.trapezoid(norms[: k + 1], dx=1.0 / n))
        rhs = 3.0 / delta * integral
        rows.append({"delta": delta, "lhs": table[k], "rhs": rhs, "margin": rhs - table[k]})
    return {"rows": rows, "min_margin": min(r["margin"] for r in rows)}


def diff_modulus_bound_check(
    f: Grid2, h_idx: int, p: Exponent, cap: int = MIXED_TABLE_CAP
) -> dict:
    """First-difference moduli against twice the minimum of the parent moduli.

    Checks omega(D1(h)f; u, v) <= 2 min(omega(f; u, v), omega(f; h, v))
    entrywise on the mixed tables, and the isotropic analogue.
    """
    a = f.samples
    g = Grid2(np.roll(a, -(h_idx % f.m), axis=0) - a) if h_idx % f.m else None

    if g is None:
        return {"mixed_min_margin": 0.0, "iso_min_margin": 0.0, "h_idx": h_idx}

    tf = modulus_mixed(f, p, cap=cap)
    tg = modulus_mixed(g, p, cap=cap)
    bound = 2.0 * np.minimum(tf.values, tf.values[h_idx, :][None, :])
    mixed_margin = float(np.min(bound - tg.values))

    sf = modulus_iso_2d(f, p, cap=cap)
    sg = modulus_iso_2d(g, p, cap=cap)
    k_h = min(sf.k_max, int(round(h_idx / f.m / sf.step)))
    iso_bound = 2.0 * np.minimum(sf.values, sf.values[k_h])
    iso_margin = float(np.min(iso_bound - sg.values))

    return {"mixed_min_margin": mixed_margin, "iso_min_margin": iso_margin, "h_idx": h_idx}


def omega_sandwich_check(g: Grid1, p: Exponent) -> dict:
    """Omega_p <= omega(f; 1)_p <= 2 Omega_p on the grid."""
    om = omega_p_functional(g, p)
    w1 = modulus_1d(g, p).values[-1]
    return {
        "omega_p": om,
        "modulus_at_1": w1,
        "lower_margin": w1 - om,
        "upper_margin": 2.0 * om - w1,
    }
