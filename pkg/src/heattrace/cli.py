"""Command-line front end: single values, N-sweeps, and verification suites.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
Output is deterministic for a fixed invocation (verify reports exclude the
wall-time field from that promise).  Set HEATTRACE_TOL_SCALE to loosen or
tighten every default tolerance by a constant factor, e.g. in CI.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from .circle import CycleSpec, cycle_free_energy_bessel, cycle_logdet_exact, s1_free_energy
from .deform import deformed_f3, deformed_f5, deformed_f_general
from .qdeform import q_free_energy_order2
from .specfun import ConvergenceError
from .sphere import (
    Coupling,
    f_integral_rep,
    f_pc_zeta,
    parse_coupling,
    reference_free_energy,
)
from .verify import SUITES, VerifyReport, run_suite

__all__ = ["RunConfig", "build_parser", "run_compute", "run_sweep", "run_verify", "main", "entry"]

TARGETS = ("s1", "cycle", "sphere", "deformed", "qdeformed")
METHODS = ("auto", "series", "integral", "zeta", "bessel", "logdet")
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: which quantity, at which point, via which route."""

    command: str
    target: str = "sphere"
    d: int = 3
    N: "int | tuple[int, int, int] | None" = None
    coupling: str = "conformal"
    ma: float | None = None
    method: str = "auto"
    tol: float = DEFAULT_TOL
    output: str | None = None
    format: str = "text"
    suite: str = "all"
    tol_scale: float = 1.0


class UsageError(ValueError):
    """Flag combination rejected before any computation starts."""


def _parse_range(text: str) -> "int | tuple[int, int, int]":
    """`N` flag: a single integer, or an inclusive start:stop:step range."""
    if ":" not in text:
        return int(text)
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must look like start:stop:step")
    try:
        start, stop, step = (int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("need stop >= start and step > 0")
    return (start, stop, step)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heattrace",
        description="Regularized one-loop free energies from heat-kernel traces: "
        "circle, cycle graph, odd spheres, and their trigonometric/q deformations.",
        epilog="Environment: HEATTRACE_TOL_SCALE multiplies every default "
        "tolerance (positive float, default 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser(
        "compute",
        help="compute a single free-energy value",
        description="Compute one value and print value/method/error estimate.",
    )
    comp.add_argument("target", choices=TARGETS, help="which geometry/variant")
    comp.add_argument("--d", type=int, default=3, help="odd sphere dimension (3..11)")
    comp.add_argument("--N", type=_parse_range, default=None, help="size parameter")
    comp.add_argument(
        "--coupling",
        default="conformal",
        help="curvature coupling: conformal or pc (pseudo-conformal)",
    )
    comp.add_argument("--ma", type=float, default=None, help="dimensionless mass m*a")
    comp.add_argument(
        "--method",
        choices=METHODS,
        default="auto",
        help="evaluation route; auto picks the natural one per target",
    )
    comp.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    comp.add_argument("--output", default=None, help="write to this file instead of stdout")
    comp.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )

    sw = sub.add_parser(
        "sweep",
        help="sweep N and emit convergence rows",
        description="Emit `N,F_deformed,F_limit,rel_error` rows over a range of N.",
    )
    sw.add_argument(
        "--target",
        choices=("deformed", "qdeformed"),
        default="deformed",
        help="which deformation family to sweep",
    )
    sw.add_argument("--d", type=int, default=3, help="odd sphere dimension")
    sw.add_argument(
        "--N",
        type=_parse_range,
        required=True,
        help="single N or inclusive range start:stop:step",
    )
    sw.add_argument("--coupling", default="conformal", help="conformal or pc")
    sw.add_argument(
        "--method",
        choices=("auto", "series", "integral"),
        default="auto",
        help="deformed-value route",
    )
    sw.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
    sw.add_argument("--output", default=None, help="write to this file instead of stdout")
    sw.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")

    ver = sub.add_parser(
        "verify",
        help="run a verification suite",
        description="Run named numeric checks; exit 0 only if every check passes. "
        "JSON reports follow verify_report.schema.json shipped with the package.",
    )
    ver.add_argument("--suite", choices=SUITES, default="all", help="which suite")
    ver.add_argument("--output", default=None, help="write to this file instead of stdout")
    ver.add_argument("--format", choices=("text", "json"), default="text", help="report format")

    return parser


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def _single_N(cfg: RunConfig) -> int:
    _require(cfg.N is not None, f"target {cfg.target!r} needs --N")
    _require(isinstance(cfg.N, int), "this command needs a single --N, not a range")
    return cfg.N  # type: ignore[return-value]


def _compute_point(cfg: RunConfig) -> tuple[float, str, float]:
    """Dispatch one computation; returns (value, method label, error estimate)."""
    method = cfg.method
    if cfg.target == "s1":
        _require(cfg.ma is not None, "target 's1' needs --ma")
        _require(method == "auto", "target 's1' has only the closed form (--method auto)")
        return s1_free_energy(cfg.ma), "closed_form", 0.0

    if cfg.target == "cycle":
        _require(cfg.ma is not None, "target 'cycle' needs --ma")
        spec = CycleSpec(_single_N(cfg), cfg.ma)
        if method in ("auto", "logdet"):
            return cycle_logdet_exact(spec), "logdet", 0.0
        if method == "bessel":
            res = cycle_free_energy_bessel(spec)
            return res.value, "bessel_series", res.err_estimate
        raise UsageError("target 'cycle' supports --method auto|logdet|bessel")

    if cfg.target == "sphere":
        coupling = parse_coupling(cfg.coupling)
        if method == "auto":
            return reference_free_energy(cfg.d, coupling), "closed_form", 0.0
        if method == "zeta":
            _require(
                coupling is Coupling.PSEUDO_CONFORMAL,
                "the zeta route applies to --coupling pc only",
            )
            return f_pc_zeta(cfg.d), "zeta_series", 0.0
        if method == "integral":
            return f_integral_rep(cfg.d, coupling, cfg.tol), "quadrature", cfg.tol
        raise UsageError("target 'sphere' supports --method auto|zeta|integral")

    if cfg.target == "deformed":
        coupling = parse_coupling(cfg.coupling)
        n = _single_N(cfg)
        if method == "auto":
            method = "series" if cfg.d in (3, 5) else "integral"
        if method == "series":
            _require(cfg.d in (3, 5), "closed deformed series exist for --d 3 and --d 5")
            fn = deformed_f3 if cfg.d == 3 else deformed_f5
            return fn(n, coupling), "series", 0.0
        if method == "integral":
            return deformed_f_general(cfg.d, n, coupling, cfg.tol), "quadrature", cfg.tol
        raise UsageError("target 'deformed' supports --method auto|series|integral")

    if cfg.target == "qdeformed":
        _require(cfg.d == 3, "the q-deformed free energy is only available at --d 3")
        _require(method in ("auto", "series"), "target 'qdeformed' is a closed series")
        coupling = parse_coupling(cfg.coupling)
        return q_free_energy_order2(_single_N(cfg), coupling), "series", 0.0

    raise UsageError(f"unknown target {cfg.target!r}")


def run_compute(cfg: RunConfig) -> str:
    value, label, err = _compute_point(cfg)
    if cfg.format == "json":
        return (
            json.dumps({"value": value, "method": label, "err_estimate": err}) + "\n"
        )
    if cfg.format == "csv":
        return f"value,method,err_estimate\n{value!r},{label},{err!r}\n"
    return f"value = {value!r}\nmethod = {label}\nerr_estimate = {err!r}\n"


def _sweep_points(cfg: RunConfig) -> list[int]:
    if isinstance(cfg.N, int):
        return [cfg.N]
    start, stop, step = cfg.N  # type: ignore[misc]
    return list(range(start, stop + 1, step))


def run_sweep(cfg: RunConfig) -> str:
    coupling = parse_coupling(cfg.coupling)
    if cfg.target == "qdeformed":
        _require(cfg.d == 3, "the q-deformed sweep is only available at --d 3")
        limit = q_free_energy_order2(10**9, coupling)

        def value_at(n: int) -> float:
            return q_free_energy_order2(n, coupling)

    else:
        limit = reference_free_energy(cfg.d, coupling)
        method = cfg.method
        if method == "auto":
            method = "series" if cfg.d in (3, 5) else "integral"
        if method == "series":
            _require(cfg.d in (3, 5), "closed deformed series exist for --d 3 and --d 5")
            fn = deformed_f3 if cfg.d == 3 else deformed_f5

            def value_at(n: int) -> float:
                return fn(n, coupling)

        else:

            def value_at(n: int) -> float:
                return deformed_f_general(cfg.d, n, coupling, cfg.tol)

    rows = []
    for n in _sweep_points(cfg):
        value = value_at(n)
        rel = abs(value - limit) / abs(limit)
        rows.append((n, value, limit, rel))

    if cfg.format == "json":
        payload = [
            {"N": n, "F_deformed": v, "F_limit": lim, "rel_error": rel}
            for n, v, lim, rel in rows
        ]
        return json.dumps(payload) + "\n"
    lines = ["N,F_deformed,F_limit,rel_error"]
    lines += [f"{n},{v!r},{lim!r},{rel!r}" for n, v, lim, rel in rows]
    return "\n".join(lines) + "\n"


def run_verify(cfg: RunConfig) -> tuple[VerifyReport, str]:
    report = run_suite(cfg.suite, cfg.tol_scale)
    if cfg.format == "json":
        return report, json.dumps(report.to_dict(), indent=2) + "\n"
    lines = [f"suite: {report.suite}"]
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(
            f"[{status}] {c.name}: got={c.got!r} expected={c.expected!r} tol={c.tol:.3g}"
        )
    lines.append(f"all_pass: {report.all_pass}")
    lines.append(f"wall_time_ms: {report.wall_time_ms:.1f}")
    return report, "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _tol_scale_from_env() -> float:
    raw = os.environ.get("HEATTRACE_TOL_SCALE")
    if raw is None:
        return 1.0
    try:
        scale = float(raw)
    except ValueError:
        raise UsageError(f"HEATTRACE_TOL_SCALE must be a number, got {raw!r}") from None
    if not (math.isfinite(scale) and scale > 0.0):
        raise UsageError("HEATTRACE_TOL_SCALE must be a positive finite number")
    return scale


def _config_from_args(args: argparse.Namespace, tol_scale: float) -> RunConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        tol = DEFAULT_TOL * tol_scale
    elif not (math.isfinite(tol) and tol > 0.0):
        raise UsageError("--tol must be a positive finite number")
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", "sphere"),
        d=getattr(args, "d", 3),
        N=getattr(args, "N", None),
        coupling=getattr(args, "coupling", "conformal"),
        ma=getattr(args, "ma", None),
        method=getattr(args, "method", "auto"),
        tol=tol,
        output=args.output,
        format=args.format,
        suite=getattr(args, "suite", "all"),
        tol_scale=tol_scale,
    )


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote the message
        return int(exc.code or 0)

    try:
        cfg = _config_from_args(args, _tol_scale_from_env())
        if cfg.command == "compute":
            _emit(run_compute(cfg), cfg.output)
            return 0
        if cfg.command == "sweep":
            _emit(run_sweep(cfg), cfg.output)
            return 0
        report, text = run_verify(cfg)
        _emit(text, cfg.output)
        return 0 if report.all_pass else 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # module precondition rejected a flag value
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, OverflowError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
