"""Command-line front end: point evaluation, parameter sweeps, verification.

Subcommands
-----------
``eval``    print one function value with 15 significant digits;
``sweep``   tabulate solution curves over a (k, upsilon) product into a CSV;
``verify``  residual-check a closed-form solution against the Volterra oracle.

Exit codes: 0 success, 1 verification verdict failure (``verify`` only),
2 invalid input or unparsable arguments.

Numeric knobs resolve in precedence order: explicit flag > ``--config`` file
> ``FRAC_KINETICS_MAX_TERMS`` environment variable (max_terms only) >
built-in default.  The config file is a flat ``key = value`` list (``#``
comments allowed), keys matching the long flag names with underscores, e.g.::

    max_terms = 80
    rel_tol = 1e-12
    exponent_reading = printed

Sweep CSVs are UTF-8 with ``\\n`` line endings, a mandatory header row
``t,N_k<k>_v<upsilon>,...``, columns ordered k-outer/upsilon-inner, and all
values printed with 15 significant digits, so identical invocations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kgamma import gamma, k_gamma
from .kinetics import (
    READINGS,
    KineticProblem,
    KStruveParams,
    Variant,
    solve_table,
    solve_thm1,
    solve_thm2,
    solve_thm3,
)
from .oracle import QuadratureGrid, residual
from .special import SeriesControl, k_struve, mittag_leffler, mittag_leffler2, struve_h

__all__ = ["main", "SweepSpec", "VERIFY_TOL"]

VERIFY_TOL = 5e-4
ENV_MAX_TERMS = "FRAC_KINETICS_MAX_TERMS"

_EVAL_PARAMS = {
    "gamma": ("x",),
    "kgamma": ("x", "k"),
    "struve": ("p", "x"),
    "kstruve": ("nu", "c", "k", "x"),
    "ml": ("alpha", "z"),
    "ml2": ("alpha", "beta", "z"),
    "thm1": ("n0", "d", "upsilon", "l", "c", "k", "t"),
    "thm2": ("n0", "d", "upsilon", "l", "c", "k", "t"),
    "thm3": ("n0", "d", "a", "upsilon", "l", "c", "k", "t"),
}


@dataclass(frozen=True)
class SweepSpec:
    """A (k, upsilon) product sweep of one theorem variant over a t-grid."""

    variant: Variant
    k_values: tuple[float, ...]
    upsilon_values: tuple[float, ...]
    n0: float
    d: float
    c: float
    l: float
    t_min: float
    t_max: float
    points: int
    out: str
    a: float | None = None
    reading: str = "consistent"

    def __post_init__(self) -> None:
        if not self.k_values or not self.upsilon_values:
            raise DomainError("parameter lists must be non-empty")
        if not (0.0 <= self.t_min < self.t_max):
            raise DomainError(
                f"need t_max > t_min >= 0, got t_min = {self.t_min!r}, t_max = {self.t_max!r}"
            )
        if self.points < 2:
            raise DomainError(f"points must be >= 2, got {self.points!r}")


class _CliError(Exception):
    """Internal: input problem that should terminate with exit code 2."""


def _parse_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _CliError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
                key, value = line.split("=", 1)
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise _CliError(f"cannot read config file {path}: {exc}") from exc
    return out


def _resolve_control(args: argparse.Namespace) -> tuple[SeriesControl, dict[str, str]]:
    """Apply flag > config > env > default precedence for the series knobs."""
    config = _parse_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(config) - {"max_terms", "rel_tol", "exponent_reading"}
    if unknown:
        raise _CliError(f"unknown config keys: {', '.join(sorted(unknown))}")

    max_terms = getattr(args, "max_terms", None)
    if max_terms is None and "max_terms" in config:
        try:
            max_terms = int(config["max_terms"])
        except ValueError as exc:
            raise _CliError(f"config max_terms: {config['max_terms']!r} is not an integer") from exc
    if max_terms is None and os.environ.get(ENV_MAX_TERMS):
        try:
            max_terms = int(os.environ[ENV_MAX_TERMS])
        except ValueError as exc:
            raise _CliError(
                f"{ENV_MAX_TERMS}: {os.environ[ENV_MAX_TERMS]!r} is not an integer"
            ) from exc
    if max_terms is None:
        max_terms = 50

    rel_tol = getattr(args, "rel_tol", None)
    if rel_tol is None and "rel_tol" in config:
        try:
            rel_tol = float(config["rel_tol"])
        except ValueError as exc:
            raise _CliError(f"config rel_tol: {config['rel_tol']!r} is not a number") from exc
    if rel_tol is None:
        rel_tol = 1e-14

    try:
        return SeriesControl(max_terms=max_terms, rel_tol=rel_tol), config
    except DomainError as exc:
        raise _CliError(str(exc)) from exc


def _resolve_reading(args: argparse.Namespace, config: dict[str, str]) -> str:
    reading = getattr(args, "exponent_reading", None)
    if reading is None:
        reading = config.get("exponent_reading")
    if reading is None:
        reading = "consistent"
    if reading not in READINGS:
        raise _CliError(f"exponent_reading must be one of {READINGS}, got {reading!r}")
    return reading


def _need(args: argparse.Namespace, names: tuple[str, ...]) -> dict[str, float]:
    got = {}
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            raise _CliError(f"missing parameter: --{name}")
        got[name] = value
    return got


def _build_problem(variant: Variant, v: dict[str, float]) -> KineticProblem:
    struve = KStruveParams(nu=v["l"], c=v["c"], k=v["k"])
    return KineticProblem(
        n0=v["n0"],
        upsilon=v["upsilon"],
        d=v["d"],
        struve=struve,
        variant=variant,
        a=v.get("a"),
    )


def _cmd_eval(args: argparse.Namespace) -> int:
    ctl, config = _resolve_control(args)
    reading = _resolve_reading(args, config)
    name = args.function
    v = _need(args, _EVAL_PARAMS[name])
    if name == "gamma":
        value = gamma(v["x"])
    elif name == "kgamma":
        value = k_gamma(v["x"], v["k"])
    elif name == "struve":
        value = struve_h(v["p"], v["x"], ctl)
    elif name == "kstruve":
        value = k_struve(KStruveParams(nu=v["nu"], c=v["c"], k=v["k"]), v["x"], ctl)
    elif name == "ml":
        value = mittag_leffler(v["alpha"], v["z"], ctl)
    elif name == "ml2":
        value = mittag_leffler2(v["alpha"], v["beta"], v["z"], ctl)
    elif name == "thm1":
        value = solve_thm1(_build_problem(Variant.THM1, v), v["t"], ctl)
    elif name == "thm2":
        value = solve_thm2(_build_problem(Variant.THM2, v), v["t"], ctl, reading=reading)
    else:
        value = solve_thm3(_build_problem(Variant.THM3, v), v["t"], ctl, reading=reading)
    print(f"{value:.15g}")
    return 0


def _parse_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise _CliError(f"--{flag}: expected comma-separated reals, got {text!r}") from exc
    if not values:
        raise _CliError(f"--{flag}: list must be non-empty")
    return values


def _column_label(k: float, upsilon: float) -> str:
    return f"N_k{k:g}_v{upsilon:g}"


def _cmd_sweep(args: argparse.Namespace) -> int:
    ctl, config = _resolve_control(args)
    reading = _resolve_reading(args, config)
    variant = Variant(args.variant)
    spec = SweepSpec(
        variant=variant,
        k_values=_parse_list(args.k_list, "k-list"),
        upsilon_values=_parse_list(args.upsilon_list, "upsilon-list"),
        n0=args.n0 if args.n0 is not None else 1.0,
        d=args.d if args.d is not None else 1.0,
        c=args.c if args.c is not None else 1.0,
        l=args.l if args.l is not None else 1.0,
        a=args.a,
        t_min=args.t_min,
        t_max=args.t_max,
        points=args.points,
        out=args.out,
        reading=reading,
    )
    grid = np.linspace(spec.t_min, spec.t_max, spec.points)
    columns: list[tuple[str, np.ndarray]] = []
    for k in spec.k_values:
        for upsilon in spec.upsilon_values:
            try:
                problem = KineticProblem(
                    n0=spec.n0,
                    upsilon=upsilon,
                    d=spec.d,
                    struve=KStruveParams(nu=spec.l, c=spec.c, k=k),
                    variant=spec.variant,
                    a=spec.a,
                )
                table = solve_table(problem, grid, ctl, reading=spec.reading)
            except (DomainError, OverflowError) as exc:
                raise _CliError(f"cell k = {k:g}, upsilon = {upsilon:g}: {exc}") from exc
            columns.append((_column_label(k, upsilon), table.n))

    header = "t," + ",".join(label for label, _ in columns)
    lines = [header]
    for i, t in enumerate(grid):
        row = [f"{t:.15g}"] + [f"{vals[i]:.15g}" for _, vals in columns]
        lines.append(",".join(row))
    try:
        with open(spec.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise _CliError(f"cannot write {spec.out}: {exc}") from exc

    all_vals = np.column_stack([vals for _, vals in columns])
    non_monotone = [
        label
        for (label, vals) in columns
        if np.any(np.diff(vals) < -1e-12 * max(1.0, float(np.abs(vals).max())))
    ]
    summary = (
        f"{len(grid)} rows, {1 + len(columns)} columns, "
        f"N min {all_vals.min():.15g}, N max {all_vals.max():.15g}"
    )
    if non_monotone:
        summary += "; non-monotone columns: " + ", ".join(non_monotone)
    else:
        summary += "; all columns nondecreasing"
    print(summary)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    ctl, config = _resolve_control(args)
    reading = _resolve_reading(args, config)
    variant = Variant(args.variant)
    v = {
        "n0": args.n0 if args.n0 is not None else 1.0,
        "d": args.d if args.d is not None else 1.0,
        "upsilon": args.upsilon if args.upsilon is not None else 1.0,
        "l": args.l if args.l is not None else 1.0,
        "c": args.c if args.c is not None else 1.0,
        "k": args.k if args.k is not None else 1.0,
    }
    if args.a is not None:
        v["a"] = args.a
    if args.grid_n < 8:
        raise _CliError(f"--grid-n must be >= 8, got {args.grid_n}")
    problem = _build_problem(variant, v)
    grid = QuadratureGrid(n=args.grid_n, t_max=args.t_max)
    table = solve_table(problem, grid.nodes, ctl, reading=reading)
    report = residual(problem, table, grid, ctl)
    scale = float(np.abs(table.n).max())
    rel = report.max_defect / scale if scale > 0.0 else report.max_defect
    print(f"max defect {report.max_defect:.6e} at t = {report.argmax_t:.6g}")
    print(f"mean defect {report.mean_defect:.6e}")
    print(f"relative defect {rel:.6e} (tolerance {VERIFY_TOL:g})")
    return 0 if rel <= VERIFY_TOL else 1


def _add_control_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--max-terms", type=int, default=None, help="series truncation length (default 50)")
    sub.add_argument("--rel-tol", type=float, default=None, help="series early-exit tolerance (default 1e-14)")
    sub.add_argument("--config", default=None, help="key = value config file; flags override it")
    sub.add_argument(
        "--exponent-reading",
        choices=READINGS,
        default=None,
        help="term-exponent reading for thm2/thm3 (default consistent)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frac-kinetics",
        description="k-Struve fractional kinetics: evaluate, sweep, verify.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="print one function value (15 significant digits)")
    p_eval.add_argument("function", choices=sorted(_EVAL_PARAMS))
    for flag in ("x", "k", "p", "nu", "c", "alpha", "beta", "z", "n0", "d", "a", "upsilon", "l", "t"):
        p_eval.add_argument(f"--{flag}", type=float, default=None)
    _add_control_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = subs.add_parser("sweep", help="tabulate solution curves into a CSV")
    p_sweep.add_argument("--variant", choices=[v.value for v in Variant], default="thm1")
    p_sweep.add_argument("--k-list", default="1", help="comma-separated k values (outer columns)")
    p_sweep.add_argument("--upsilon-list", default="1", help="comma-separated upsilon values (inner)")
    for flag in ("n0", "d", "c", "l", "a"):
        p_sweep.add_argument(f"--{flag}", type=float, default=None)
    p_sweep.add_argument("--t-min", type=float, default=0.0)
    p_sweep.add_argument("--t-max", type=float, default=1.0)
    p_sweep.add_argument("--points", type=int, default=101)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    _add_control_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = subs.add_parser("verify", help="residual-check a closed form against the oracle")
    p_verify.add_argument("--variant", choices=[v.value for v in Variant], default="thm1")
    for flag in ("n0", "d", "a", "upsilon", "l", "c", "k"):
        p_verify.add_argument(f"--{flag}", type=float, default=None)
    p_verify.add_argument("--grid-n", type=int, default=1024)
    p_verify.add_argument("--t-max", type=float, default=1.0)
    _add_control_flags(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
