"""Command-line front end: variation, moduli, integrals, verification, sweeps.

Exit codes: 0 success (verify: all checks pass), 1 failed checks or runtime
errors, 2 usage errors (bad flags, malformed input, p out of range).
"""

from __future__ import annotations

import argparse
import json
import sys

from .grid import (
    Exponent,
    Grid1,
    Grid2,
    gen_gn,
    gen_product,
    gen_series_f,
    gen_sine,
    gen_staircase,
    gen_tent_scaled,
    load_csv,
    save_csv,
    save_report_json,
)
from .harness import SuiteConfig, run_suite, sharpness_sweep, sweep_rows_to_csv
from .mixednorm import phi_profile, psi_profile, w_p
from .modulus import modulus_1d, modulus_iso_2d, modulus_mixed
from .pvar1d import pvar_cyclic, pvar_oracle
from .smoothness import integral_I, integral_J, integral_K
from .vitali2d import ORACLE_MAX_SIDE, vitali_ascent, vitali_finest, vitali_oracle

USAGE_ERROR = 2


class CliError(Exception):
    """A usage-level problem; reported on stderr with exit code 2."""


def _exponent(value: float, need_gt_1: bool = False) -> Exponent:
    try:
        p = Exponent(value)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if need_gt_1 and p.p == 1.0:
        raise CliError("p must exceed 1 for the weighted smoothness integrals")
    return p


def _load(path: str) -> Grid1 | Grid2:
    try:
        return load_csv(path)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot load grid {path!r}: {exc}") from exc


def _need_1d(g) -> Grid1:
    if not isinstance(g, Grid1):
        raise CliError("this command needs a 1-D grid (single-row CSV)")
    return g


def _need_2d(g) -> Grid2:
    if not isinstance(g, Grid2):
        raise CliError("this command needs a 2-D grid")
    return g


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_pvar(args) -> int:
    g = _need_1d(_load(args.grid))
    p = _exponent(args.p)
    if args.oracle:
        if g.n > args.oracle_limit:
            raise CliError(f"oracle limited to N <= {args.oracle_limit}")
        value = pvar_oracle(g, p)
        payload = {"p": p.p, "value": value, "method": "oracle"}
    else:
        value, part = pvar_cyclic(g, p)
        payload = {
            "p": p.p,
            "value": value,
            "partition": list(part.indices),
            "method": "exact-dp",
        }
    _emit(payload, args)
    return 0


def cmd_vitali(args) -> int:
    f = _need_2d(_load(args.grid))
    p = _exponent(args.p)
    method = args.method
    if method == "auto":
        method = (
            "oracle"
            if (f.m <= ORACLE_MAX_SIDE and f.n <= ORACLE_MAX_SIDE)
            else ("finest" if p.p == 1.0 else "ascent")
        )
    if method == "oracle":
        if f.m > ORACLE_MAX_SIDE or f.n > ORACLE_MAX_SIDE:
            raise CliError(f"oracle limited to {ORACLE_MAX_SIDE}x{ORACLE_MAX_SIDE} grids")
        payload = {"p": p.p, "value": vitali_oracle(f, p), "method": "oracle"}
    elif method == "finest":
        payload = {
            "p": p.p,
            "value": vitali_finest(f, p),
            "method": "finest",
            "exact": p.p == 1.0,
        }
    else:
        r = vitali_ascent(f, p, seed=args.seed)
        payload = {
            "p": p.p,
            "value": r.value,
            "method": "ascent",
            "certified": "lower bound",
            "converged": r.converged,
            "rows": list(r.net.rows.indices),
            "cols": list(r.net.cols.indices),
        }
    _emit(payload, args)
    return 0


def cmd_modulus(args) -> int:
    g = _load(args.grid)
    p = _exponent(args.p)
    kw = {"cap": args.cap, "override": args.cap_override}
    if isinstance(g, Grid1):
        table = modulus_1d(g, p)
        values = table.values[None, :]
        steps = (0.0, table.step)
    elif args.kind == "iso":
        table = modulus_iso_2d(g, p, **kw)
        values = table.values[None, :]
        steps = (0.0, table.step)
    else:
        table = modulus_mixed(g, p, **kw)
        values = table.values
        steps = table.steps
    if args.format == "json":
        _emit({"p": p.p, "steps": list(steps), "values": values.tolist()}, args)
    else:
        lines = [",".join(repr(float(v)) for v in row) for row in values]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_integrals(args) -> int:
    g = _load(args.grid)
    p = _exponent(args.p, need_gt_1=True)
    kw = {"cap": args.cap, "override": args.cap_override}
    if isinstance(g, Grid1):
        payload = {"p": p.p, "J": integral_J(modulus_1d(g, p)).to_dict()}
    else:
        table = modulus_mixed(g, p, **kw)
        payload = {
            "p": p.p,
            "K": integral_K(table).to_dict(),
            "I": integral_I(table).to_dict(),
            "J_iso": integral_J(modulus_iso_2d(g, p, **kw)).to_dict(),
        }
    _emit(payload, args)
    return 0


def cmd_wp(args) -> int:
    f = _need_2d(_load(args.grid))
    p = _exponent(args.p)
    payload = {
        "p": p.p,
        "w_p": w_p(f, p),
        "phi": phi_profile(f, p).values.samples.tolist(),
        "psi": psi_profile(f, p).values.samples.tolist(),
    }
    _emit(payload, args)
    return 0


def cmd_verify(args) -> int:
    chosen = args.families or args.suite
    if chosen and chosen != "all":
        families = tuple(chosen.split(","))
    else:
        families = SuiteConfig().families
    cfg = SuiteConfig(seed=args.seed, families=families)
    try:
        cfg.validate()
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    report = run_suite(cfg)
    if args.out:
        save_report_json(report, args.out)
    else:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    n_fail = sum(not c["pass"] for c in report.checks)
    sys.stderr.write(f"{len(report.checks)} checks, {n_fail} failed\n")
    return 0 if report.all_pass else 1


def cmd_sweep(args) -> int:
    p_grid = tuple(float(v) for v in args.p_list.split(","))
    for p in p_grid:
        _exponent(p)
    n_grid = tuple(int(v) for v in args.n_list.split(","))
    try:
        rows = sharpness_sweep(args.family, p_grid, n_grid, size=args.size, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "json":
        _emit({"rows": rows}, args)
    else:
        text = sweep_rows_to_csv(rows)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    n, N = args.n, args.N
    try:
        if args.family == "tent":
            g = gen_tent_scaled(n, N)
        elif args.family == "sine":
            g = gen_sine(n, N)
        elif args.family == "bump":
            g = gen_gn(n, N)
        elif args.family == "staircase":
            g = gen_staircase(N)
        elif args.family == "series":
            g = gen_series_f(n, _exponent(args.p, need_gt_1=False), N)
        elif args.family == "sineprod":
            g = gen_product(gen_sine(n, N), gen_sine(max(1, args.m), N))
        else:
            raise CliError(f"unknown family {args.family!r}")
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    save_csv(g, args.out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pvarlab",
        description="p-variation and smoothness diagnostics on periodic grids",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p_parser, p_default=2.0, grid=True):
        if grid:
            p_parser.add_argument("--grid", required=True, help="CSV grid file")
        p_parser.add_argument("--p", type=float, default=p_default, help="variation index")
        p_parser.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("pvar", help="cyclic p-variation of a 1-D grid")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="brute-force all partitions")
    sp.add_argument("--oracle-limit", type=int, default=18, dest="oracle_limit")
    sp.set_defaults(fn=cmd_pvar)

    sp = sub.add_parser("vitali", help="Vitali p-variation of a 2-D grid over nets")
    common(sp)
    sp.add_argument("--method", choices=("auto", "finest", "ascent", "oracle"), default="auto")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_vitali)

    sp = sub.add_parser("modulus", help="modulus-of-continuity table")
    common(sp)
    sp.add_argument("--kind", choices=("mixed", "iso"), default="mixed")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--cap", type=int, default=128)
    sp.add_argument("--cap-override", action="store_true", dest="cap_override")
    sp.set_defaults(fn=cmd_modulus)

    sp = sub.add_parser("integrals", help="certified enclosures of the smoothness integrals")
    common(sp)
    sp.add_argument("--cap", type=int, default=128)
    sp.add_argument("--cap-override", action="store_true", dest="cap_override")
    sp.set_defaults(fn=cmd_integrals)

    sp = sub.add_parser("wp", help="mixed-norm functional of the section profiles")
    common(sp)
    sp.set_defaults(fn=cmd_wp)

    sp = sub.add_parser("verify", help="run the full inequality suite")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--suite", default="all",
                    help='"all" or a comma-separated subset of suites')
    sp.add_argument("--families", help="alias for --suite (comma-separated subset)")
    sp.add_argument("--out", help="write the JSON report here")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("sweep", help="sharpness-diagnostic sweep")
    sp.add_argument("--family", required=True,
                    choices=("t1xt1", "tnxt1", "tnxtn", "trigpoly"))
    sp.add_argument("--p-list", default="2.0", dest="p_list")
    sp.add_argument("--n-list", default="1,2,4", dest="n_list")
    sp.add_argument("--size", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("gen", help="write a generator to CSV")
    sp.add_argument("--family", required=True,
                    choices=("tent", "sine", "bump", "staircase", "series", "sineprod"))
    sp.add_argument("--n", type=int, default=1, help="frequency / truncation order")
    sp.add_argument("--m", type=int, default=1, help="second frequency (sineprod)")
    sp.add_argument("--N", type=int, required=True, help="grid resolution")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_gen)

    return top


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except Exception as exc:  # noqa: BLE001 - runtime failure, not usage
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
