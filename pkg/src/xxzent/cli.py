"""Command-line interface: eval, ground, sweep, critical, verify.

Field flags follow the --big-b / --b convention so the uniform and
inhomogeneous fields cannot be confused by case-insensitive shells.
Records are emitted as JSON (schema/output.json); grids as CSV or JSON.

Exit codes: 0 success, 1 numerical-domain or I/O error, 2 usage error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .linalg import NoConvergenceError, NonHermitianError, NotPSDError, hermitian_eigen
from .model import (
    InvalidParameterError,
    ModelParams,
    NotNormalizedError,
    BOUNDARY_TOL,
    build_hamiltonian,
    ground_state,
)
from .sweep import (
    Axis,
    InvalidAxisError,
    ROOT_RESIDUAL_TOL,
    SweepGrid,
    UnknownFigureError,
    axis_columns,
    critical_field,
    critical_temperature,
    figure_data,
    sweep,
)
from .thermal import (
    BoltzmannOverflowError,
    InvalidDensityMatrixError,
    NonPositiveTemperatureError,
    NotXStateError,
    gibbs_closed,
    thermal_concurrence,
)
from .verify import run_suites

SCHEMA_VERSION = "1"

AXIS_TOKENS = {"t": "T", "b": "b", "big-b": "B", "jz": "Jz", "j": "J"}

TOLERANCES = {"route_agreement": 1e-10, "density_matrix": 1e-12}

DOMAIN_ERRORS = (
    InvalidParameterError,
    NotNormalizedError,
    NonPositiveTemperatureError,
    BoltzmannOverflowError,
    InvalidDensityMatrixError,
    NotXStateError,
    NonHermitianError,
    NoConvergenceError,
    NotPSDError,
)

USAGE_ERRORS = (InvalidAxisError, UnknownFigureError)


class UsageError(Exception):
    pass


def _jsonsafe(obj):
    if isinstance(obj, dict):
        return {key: _jsonsafe(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonsafe(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return _jsonsafe(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return None if math.isnan(value) else value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _record(command: str, params: dict, results: dict, diagnostics: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
        "diagnostics": diagnostics,
    }


def _emit(record: dict, out: str | None) -> None:
    text = json.dumps(_jsonsafe(record), indent=2, allow_nan=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


def _grid_csv(grid: SweepGrid) -> str:
    names = [axis.name for axis in grid.axes]
    columns = axis_columns(grid.axes) + [grid.values.ravel()]
    lines = [",".join(names + ["concurrence"])]
    for row in zip(*columns):
        lines.append(",".join(_fmt17(x) for x in row))
    return "\n".join(lines) + "\n"


def _grid_record(grid: SweepGrid) -> dict:
    return _record(
        "sweep",
        dict(grid.fixed),
        {
            "axes": [
                {"name": a.name, "start": a.start, "stop": a.stop, "points": a.points}
                for a in grid.axes
            ],
            "values": grid.values.tolist(),
        },
        dict(grid.metadata),
    )


def _write_grid(grid: SweepGrid, path: Path, fmt: str) -> None:
    if fmt == "csv":
        path.write_text(_grid_csv(grid), encoding="utf-8", newline="")
    else:
        path.write_text(
            json.dumps(_jsonsafe(_grid_record(grid)), indent=2, allow_nan=False) + "\n",
            encoding="utf-8",
        )


def _model_params(args) -> ModelParams:
    return ModelParams(args.j, args.jz, args.big_b, args.b)


def _parse_axis(spec: str) -> Axis:
    parts = spec.split(":")
    if len(parts) != 4:
        raise UsageError(f"malformed axis spec {spec!r}; expected name:start:stop:points")
    token, start, stop, points = parts
    if token not in AXIS_TOKENS:
        raise UsageError(
            f"unknown axis name {token!r}; expected one of {sorted(AXIS_TOKENS)}"
        )
    try:
        return Axis(AXIS_TOKENS[token], float(start), float(stop), int(points))
    except ValueError as exc:
        raise UsageError(f"malformed axis spec {spec!r}: {exc}") from exc


def cmd_eval(args) -> int:
    p = _model_params(args)
    result = thermal_concurrence(p, args.t)
    if p.J != 0.0:
        _, diag = gibbs_closed(p, args.t)
        partition = {"Z": diag.Z, "m": diag.m, "n": diag.n, "s": diag.s}
    else:
        values, _ = hermitian_eigen(build_hamiltonian(p))
        shifted = np.exp(-(values - values[0]) / args.t)
        partition = {
            "Z": float(shifted.sum() * math.exp(-values[0] / args.t)),
            "m": None, "n": None, "s": None,
        }
    record = _record(
        "eval",
        {"J": p.J, "Jz": p.Jz, "B": p.B, "b": p.b, "T": float(args.t)},
        {
            "concurrence": result.value,
            "wootters_roots": list(result.wootters_roots),
            "method": result.method,
        },
        {
            **partition,
            "g": result.sign_diagnostic,
            "method": result.method,
            "tolerances": TOLERANCES,
        },
    )
    _emit(record, args.out)
    return 0


def cmd_ground(args) -> int:
    p = _model_params(args)
    report = ground_state(p)
    record = _record(
        "ground",
        {"J": p.J, "Jz": p.Jz, "B": p.B, "b": p.b},
        {
            "phase": report.phase.value,
            "ground_energy": report.ground_energy,
            "ground_concurrence": report.ground_concurrence,
            "threshold_Jz": report.threshold_Jz,
            "threshold_B": report.threshold_B,
        },
        {"boundary_tolerance": BOUNDARY_TOL},
    )
    _emit(record, args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.figure is not None:
        if args.axis:
            raise UsageError("--figure and --axis are mutually exclusive")
        grids = figure_data(args.figure)
        outdir = Path(args.out) if args.out else Path(".")
        outdir.mkdir(parents=True, exist_ok=True)
        for grid in grids:
            path = outdir / f"{grid.metadata['label']}.{args.format}"
            _write_grid(grid, path, args.format)
            print(path)
        return 0
    if not args.axis:
        raise UsageError("provide at least one --axis or --figure")
    axes = [_parse_axis(spec) for spec in args.axis]
    swept = {axis.name for axis in axes}
    flags = {"J": args.j, "Jz": args.jz, "B": args.big_b, "b": args.b, "T": args.t}
    fixed = {name: value for name, value in flags.items() if name not in swept}
    grid = sweep(axes, fixed)
    if args.out:
        _write_grid(grid, Path(args.out), args.format)
    elif args.format == "csv":
        sys.stdout.write(_grid_csv(grid))
    else:
        _emit(_grid_record(grid), None)
    return 0


def cmd_critical(args) -> int:
    p = _model_params(args)
    if args.axis == "t":
        point = critical_temperature(p)
    else:
        point = critical_field(p, args.t, AXIS_TOKENS[args.axis])
    record = _record(
        "critical",
        {"J": p.J, "Jz": p.Jz, "B": p.B, "b": p.b, "T": float(args.t)},
        {
            "axis": point.axis,
            "location": point.location,
            "bracket": list(point.bracket) if point.bracket else None,
            "residual": point.residual,
            "note": point.note,
            "zero_temperature_boundary": point.zero_temperature_boundary,
        },
        {"root_tolerance": ROOT_RESIDUAL_TOL},
    )
    _emit(record, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    suites = run_suites(args.samples, args.seed)
    all_passed = all(suite.passed for suite in suites)
    record = _record(
        "verify",
        {"samples": args.samples, "seed": args.seed},
        {
            "suites": [
                {
                    "name": s.name,
                    "samples": s.samples,
                    "max_error": s.max_error,
                    "tolerance": s.tolerance,
                    "passed": s.passed,
                    "worst_params": s.worst,
                    "details": s.details,
                }
                for s in suites
            ],
            "all_passed": all_passed,
        },
        {"rng": "philox-counter-64", "tolerances": TOLERANCES},
    )
    _emit(record, args.out)
    return 0 if all_passed else 3


def _add_param_flags(parser, with_temperature: bool = True) -> None:
    parser.add_argument("--j", type=float, default=1.0, help="xy coupling J (default 1)")
    parser.add_argument("--jz", type=float, default=0.0, help="z coupling Jz (default 0)")
    parser.add_argument("--big-b", type=float, default=0.0, dest="big_b",
                        help="uniform field B >= 0 (default 0)")
    parser.add_argument("--b", type=float, default=0.0,
                        help="inhomogeneous field b (default 0)")
    if with_temperature:
        parser.add_argument("--t", type=float, default=1.0,
                            help="temperature T > 0 (default 1)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxzent",
        description="Ground-state and thermal concurrence of the two-qubit "
        "XXZ pair in uniform (B) and inhomogeneous (b) fields.",
    )
    parser.add_argument("--version", action="version", version=f"xxzent {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="thermal concurrence at one parameter point")
    _add_param_flags(p_eval)
    p_eval.add_argument("--out", help="write the JSON record here instead of stdout")
    p_eval.set_defaults(handler=cmd_eval)

    p_ground = sub.add_parser("ground", help="ground-state phase and concurrence")
    _add_param_flags(p_ground, with_temperature=False)
    p_ground.add_argument("--out", help="write the JSON record here instead of stdout")
    p_ground.set_defaults(handler=cmd_ground)

    p_sweep = sub.add_parser("sweep", help="concurrence grid over 1 or 2 axes")
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--axis", action="append", default=[],
                         metavar="NAME:START:STOP:POINTS",
                         help="swept axis (1 or 2 of: t, b, big-b, jz, j); "
                         "the matching fixed flag is ignored")
    p_sweep.add_argument("--figure", type=int, choices=range(1, 6),
                         help="emit a bundled preset grid instead of --axis")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", help="output file (or directory for --figure)")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_crit = sub.add_parser("critical", help="critical temperature or field")
    p_crit.add_argument("--axis", choices=("t", "b", "big-b"), required=True)
    _add_param_flags(p_crit)
    p_crit.add_argument("--out", help="write the JSON record here instead of stdout")
    p_crit.set_defaults(handler=cmd_critical)

    p_verify = sub.add_parser("verify", help="run the cross-validation suites")
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--out", help="write the JSON record here instead of stdout")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
