"""Command-line interface.

Subcommands: eval (quantifiers at one point), spectrum (analytic vs numeric
levels), sweep (two-parameter grid to CSV/JSON), phase (zero-T phase map),
verify (closed-form cross-checks). JSON results go to stdout, sweep tables
go to files, and all messages go to stderr.

Exit codes: 0 success, 1 runtime or verification failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ._version import __version__
from .measures import resource_report
from .model import ModelParams, analytic_spectrum, build_hamiltonian
from .sweep import (
    QUANTITIES,
    SCHEMA_VERSION,
    GridSpec,
    SweepAxis,
    SweepError,
    run_sweep,
    write_table,
)
from .thermal import thermal_state
from .verify import DEFAULT_SEED, run_verification

__all__ = ["main"]

_AXIS_ALIASES = {"d": "d_ani"}


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(f"axis must be name:min:max:steps, got {text!r}")
    name = _AXIS_ALIASES.get(parts[0], parts[0])
    try:
        lo, hi, steps = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise ValueError(f"could not parse axis numbers in {text!r}") from None
    return SweepAxis(name=name, min=lo, max=hi, steps=steps)


def _add_param_flags(parser: argparse.ArgumentParser, defaults: bool = True) -> None:
    if defaults:
        parser.add_argument("--j", type=float, default=1.0, help="exchange coupling (> 0)")
        parser.add_argument("--delta", type=float, default=0.0, help="exchange anisotropy")
        parser.add_argument("--d", type=float, default=0.0, help="single-ion anisotropy")
        parser.add_argument("--h", type=float, default=0.0, help="longitudinal field")
    else:
        parser.add_argument("--j", type=float, default=None, help="exchange coupling (> 0)")
        parser.add_argument("--delta", type=float, default=None, help="exchange anisotropy")
        parser.add_argument("--d", type=float, default=None, help="single-ion anisotropy")
        parser.add_argument("--h", type=float, default=None, help="longitudinal field")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spindimer",
        description="Thermal quantum-resource toolkit for a spin-1 Heisenberg dimer.",
    )
    parser.add_argument("--version", action="version", version=f"spindimer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate all quantifiers at one parameter point")
    _add_param_flags(p_eval)
    p_eval.add_argument("--t", type=float, required=True, help="temperature (>= 0; 0 = ground state)")
    p_eval.add_argument(
        "--degeneracy-tol", type=float, default=None, help="ground degeneracy window (t = 0)"
    )
    p_eval.set_defaults(func=_cmd_eval)

    p_spec = sub.add_parser("spectrum", help="analytic energy levels vs numeric diagonalization")
    _add_param_flags(p_spec)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_sweep = sub.add_parser("sweep", help="two-parameter grid sweep to CSV or JSON")
    _add_param_flags(p_sweep, defaults=False)
    p_sweep.add_argument("--x", type=str, default=None, help="x axis as name:min:max:steps")
    p_sweep.add_argument("--y", type=str, default=None, help="y axis as name:min:max:steps")
    p_sweep.add_argument("--t", type=float, default=None, help="fixed temperature (0 = zero-T plane)")
    p_sweep.add_argument(
        "--quantities",
        type=str,
        default=None,
        help=f"comma list from {','.join(QUANTITIES)} (default: all)",
    )
    p_sweep.add_argument("--degeneracy-tol", type=float, default=None)
    p_sweep.add_argument("--config", type=str, default=None, help="JSON sweep definition file")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", type=str, required=True, help="output file path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_phase = sub.add_parser("phase", help="zero-temperature phase map (negativity + labels)")
    _add_param_flags(p_phase, defaults=False)
    p_phase.add_argument("--x", type=str, required=True, help="x axis as name:min:max:steps")
    p_phase.add_argument("--y", type=str, required=True, help="y axis as name:min:max:steps")
    p_phase.add_argument("--degeneracy-tol", type=float, default=None)
    p_phase.add_argument("--workers", type=int, default=1)
    p_phase.add_argument("--format", choices=("csv", "json"), default="csv")
    p_phase.add_argument("--out", type=str, required=True)
    p_phase.set_defaults(func=_cmd_phase)

    p_verify = sub.add_parser("verify", help="cross-check closed forms against generic routes")
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--n", type=int, default=1000, help="number of random draws (>= 1)")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def _params_from_args(args: argparse.Namespace) -> ModelParams:
    return ModelParams(
        j=args.j if args.j is not None else 1.0,
        delta=args.delta if args.delta is not None else 0.0,
        d_ani=args.d if args.d is not None else 0.0,
        h=args.h if args.h is not None else 0.0,
    )


def _cmd_eval(args: argparse.Namespace) -> int:
    try:
        params = _params_from_args(args)
        if args.t < 0.0:
            raise ValueError(f"t must be >= 0, got {args.t!r}")
        state = thermal_state(params, args.t, args.degeneracy_tol)
    except ValueError as exc:
        _err(str(exc))
        return 2
    report = resource_report(state)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {"j": params.j, "delta": params.delta, "d_ani": params.d_ani, "h": params.h},
        "t": state.t,
        "c_l1": report.c_l1,
        "c_r": report.c_r,
        "negativity": report.negativity,
        "steering_s": report.steering_s,
        "steerable": report.steerable,
        "phase": report.phase.value if report.phase is not None else None,
    }
    if state.ground_rank is not None:
        payload["ground_rank"] = state.ground_rank
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    try:
        params = _params_from_args(args)
    except ValueError as exc:
        _err(str(exc))
        return 2
    spectrum = analytic_spectrum(params)
    ham = build_hamiltonian(params)
    numeric = np.linalg.eigvalsh(ham)
    order = np.argsort(spectrum.energies, kind="stable")
    numeric_by_level = np.empty(9)
    numeric_by_level[order] = numeric
    residuals = np.abs(ham @ spectrum.vectors - spectrum.vectors * spectrum.energies).max(axis=0)
    levels = [
        {
            "index": k + 1,
            "energy": float(spectrum.energies[k]),
            "energy_numeric": float(numeric_by_level[k]),
            "residual": float(residuals[k]),
        }
        for k in range(9)
    ]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {"j": params.j, "delta": params.delta, "d_ani": params.d_ani, "h": params.h},
        "lambda_plus": spectrum.lambda_plus,
        "lambda_minus": spectrum.lambda_minus,
        "levels": levels,
        "multiset_max_deviation": float(
            np.abs(np.sort(spectrum.energies) - numeric).max()
        ),
    }
    print(json.dumps(payload, indent=2))
    return 0


def _quantities_from_flag(text: str) -> tuple[str, ...]:
    items = tuple(part.strip() for part in text.split(",") if part.strip())
    if not items:
        raise ValueError("empty --quantities list")
    return items


def _spec_from_sweep_args(args: argparse.Namespace) -> GridSpec:
    if args.config is not None:
        manual = [
            name
            for name in ("x", "y", "j", "delta", "d", "h", "t", "quantities", "degeneracy_tol")
            if getattr(args, name.replace("-", "_")) is not None
        ]
        if manual:
            raise ValueError(f"--config conflicts with --{', --'.join(manual)}")
        with open(args.config, "r", encoding="utf-8") as fh:
            return GridSpec.from_dict(json.load(fh))

    if args.x is None or args.y is None:
        raise ValueError("sweep needs --x and --y (or --config)")
    axis_x = _parse_axis(args.x)
    axis_y = _parse_axis(args.y)
    swept = {axis_x.name, axis_y.name}
    fixed = {"j": args.j, "delta": args.delta, "d_ani": args.d, "h": args.h, "t": args.t}
    flag = {"j": "--j", "delta": "--delta", "d_ani": "--d", "h": "--h", "t": "--t"}
    for name in swept:
        if name != "j" and fixed.get(name) is not None:
            raise ValueError(f"{flag[name]} conflicts with sweeping {name}")
    if "t" not in swept and fixed["t"] is None:
        raise ValueError("fixed --t is required when t is not a sweep axis")
    kwargs = {k: v for k, v in fixed.items() if v is not None and k not in swept}
    if args.quantities is not None:
        kwargs["quantities"] = _quantities_from_flag(args.quantities)
    if args.degeneracy_tol is not None:
        kwargs["degeneracy_tol"] = args.degeneracy_tol
    return GridSpec(axis_x=axis_x, axis_y=axis_y, **kwargs)


def _run_and_write(spec: GridSpec, args: argparse.Namespace) -> int:
    try:
        result = run_sweep(spec, workers=args.workers)
    except SweepError as exc:
        _err(str(exc))
        return 1
    except ValueError as exc:
        _err(str(exc))
        return 2
    try:
        write_table(result, args.out, args.format)
    except OSError as exc:
        _err(f"could not write {args.out}: {exc}")
        return 1
    print(
        f"wrote {result.x.size} rows to {args.out} "
        f"(subsample checked {result.metadata['subsample_points']} points, "
        f"max deviation {result.metadata['subsample_max_deviation']:.3e})",
        file=sys.stderr,
    )
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        spec = _spec_from_sweep_args(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return 2
    return _run_and_write(spec, args)


def _cmd_phase(args: argparse.Namespace) -> int:
    try:
        axis_x = _parse_axis(args.x)
        axis_y = _parse_axis(args.y)
        if "t" in (axis_x.name, axis_y.name):
            raise ValueError("phase maps are zero-T; t cannot be an axis")
        fixed = {"j": args.j, "delta": args.delta, "d_ani": args.d, "h": args.h}
        kwargs = {
            k: v
            for k, v in fixed.items()
            if v is not None and k not in (axis_x.name, axis_y.name)
        }
        if args.degeneracy_tol is not None:
            kwargs["degeneracy_tol"] = args.degeneracy_tol
        spec = GridSpec(
            axis_x=axis_x,
            axis_y=axis_y,
            t=0.0,
            quantities=("negativity", "phase"),
            **kwargs,
        )
    except ValueError as exc:
        _err(str(exc))
        return 2
    return _run_and_write(spec, args)


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 1:
        _err(f"--n must be >= 1, got {args.n}")
        return 2
    report = run_verification(n_samples=args.n, seed=args.seed)
    width = max(len(c.name) for c in report.checks)
    for check in report.checks:
        if check.informational:
            line = (
                f"{check.name:<{width}}  max dev {check.max_deviation:.3e}  "
                f"(informational; worst at {check.worst_case})"
            )
        else:
            status = "PASS" if check.passed else "FAIL"
            line = (
                f"{check.name:<{width}}  max dev {check.max_deviation:.3e}  "
                f"tol {check.tolerance:.1e}  {status}"
            )
            if not check.passed:
                line += f"  (worst at {check.worst_case})"
        print(line)
    overall = "PASS" if report.passed else "FAIL"
    print(f"overall: {overall} ({report.n_samples} draws, seed {report.seed})")
    return 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
