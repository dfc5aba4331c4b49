"""Command-line surface.

One subcommand per analysis: simulate, r0, stability, feasibility,
bifurcation, sensitivity, mixed, scan-participation.  Reports print to
standard output unless --out redirects them; CSV/SVG side files go where
--csv/--svg point.

Exit codes: 0 success, 2 validation error, 3 numerical error, 4 config
parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .config import load_config
from .core import ModelKind, Params, validate_params
from .errors import ConfigError, NumericError, ValidationError
from .feasibility import bifurcation_scan, classify_feasible_set
from .ngm import stability
from .output import render_svg, write_csv
from .scenarios import (
    RunResult,
    covid_mitigation_presets,
    participation_scan,
    run_scenario,
)
from .sensitivity import finite_diff_check, ordering_case, sensitivity_indices

__all__ = ["main"]

_DEFAULT_PLOT_OBSERVABLES = ("S1", "S2", "I", "R")


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _emit(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _params_from_flags(args: argparse.Namespace) -> tuple[ModelKind, Params]:
    """Parameters for the analysis subcommands that take rates as flags.

    The reported quantities (R0, B_rho, DFE, sensitivity indices) do not
    involve lambda or gamma, so inert values stand in for them; this keeps
    the full ordering/range validation in one place.
    """
    model = ModelKind.MA if args.model == "ma" else ModelKind.MB
    raw: dict[str, object] = {
        "beta1": args.beta1,
        "beta2": args.beta2,
        "kappa": args.kappa,
        "lambda": 1.0,
        "gamma": 0.0,
        "N": args.N,
    }
    if model is ModelKind.MB:
        if args.rho is not None:
            raise ValidationError(
                "--rho is not accepted with --model mb; the class split is "
                "derived from --alpha1/--alpha2"
            )
        if args.alpha1 is None or args.alpha2 is None:
            raise ValidationError("--model mb requires --alpha1 and --alpha2")
        raw["alpha1"] = args.alpha1
        raw["alpha2"] = args.alpha2
    else:
        if args.alpha1 is not None or args.alpha2 is not None:
            raise ValidationError(
                "--alpha1/--alpha2 are not accepted with --model ma"
            )
        if args.rho is None:
            raise ValidationError("--model ma requires --rho")
        raw["rho"] = args.rho
    allow = getattr(args, "allow_beta_gt_one", False)
    return model, validate_params(raw, model, allow_beta_gt_one=allow)


def _run_report(result: RunResult) -> list[str]:
    traj = result.trajectory
    s = result.summary
    lines = [
        f"model = {traj.model.value}",
        f"records = {len(traj)}",
        f"t = {_fmt(traj.times[0])} .. {_fmt(traj.times[-1])}",
        f"R0 = {_fmt(s.r0)}",
        f"peak I = {_fmt(s.peak_I[1])} at t = {_fmt(s.peak_I[0])}",
        f"peak Is = {_fmt(s.peak_Is[1])} at t = {_fmt(s.peak_Is[0])}",
        f"final R = {_fmt(s.final_R)}",
    ]
    if traj.switch_record is not None:
        lines.insert(3, f"switch at t = {_fmt(traj.switch_record.t_switch)}")
    return lines


def _simulate_like(args: argparse.Namespace, *, require_mixed: bool) -> int:
    cfg = load_config(args.config, allow_beta_gt_one=args.allow_beta_gt_one)
    if require_mixed and cfg.mixed is None:
        raise ValidationError(
            'this command runs the composite scenario; the config needs a "mixed" block'
        )
    result = run_scenario(cfg)
    if args.csv:
        _write(args.csv, write_csv(result.trajectory))
    if args.svg:
        observables = cfg.outputs or _DEFAULT_PLOT_OBSERVABLES
        _write(args.svg, render_svg(result.trajectory, observables))
    _emit(_run_report(result), args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    return _simulate_like(args, require_mixed=False)


def _cmd_mixed(args: argparse.Namespace) -> int:
    return _simulate_like(args, require_mixed=True)


def _cmd_r0(args: argparse.Namespace) -> int:
    model, p = _params_from_flags(args)
    report = stability(model, p)
    _emit(
        [
            f"model = {model.value}",
            f"rho = {_fmt(p.rho)}",
            f"B_rho = {_fmt(report.b_rho)}",
            f"R0 = {_fmt(report.r0)}",
        ],
        args.out,
    )
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    model, p = _params_from_flags(args)
    report = stability(model, p)
    dfe = ", ".join(
        f"{name} = {_fmt(value)}"
        for name, value in zip(type(report.dfe)._fields, report.dfe)
    )
    _emit(
        [
            f"model = {model.value}",
            f"rho = {_fmt(p.rho)}",
            f"B_rho = {_fmt(report.b_rho)}",
            f"R0 = {_fmt(report.r0)}",
            f"verdict = {report.verdict.value}",
            f"DFE: {dfe}",
        ],
        args.out,
    )
    return 0


def _cmd_feasibility(args: argparse.Namespace) -> int:
    model = ModelKind.MA if args.model == "ma" else ModelKind.MB
    report = classify_feasible_set(args.rho, args.kappa, model)
    vertices = ", ".join(
        f"({_fmt(b1)}, {_fmt(b2)})" for b1, b2 in report.vertices
    )
    _emit(
        [
            f"model = {model.value}",
            f"rho = {_fmt(report.rho)}",
            f"kappa = {_fmt(report.kappa)}",
            f"type = {report.type_label.value}",
            f"vertices: {vertices}",
        ],
        args.out,
    )
    return 0


def _rho_grid(model: ModelKind, steps: int) -> list[float]:
    """Evenly spaced interior grid of the admissible rho range.

    MA admits rho in (0, 1); MB class splits live in (0, 1/2) because
    alpha1 > alpha2.  Endpoints are excluded (open intervals).
    """
    if steps < 2:
        raise ValidationError(f"--steps must be at least 2, got {steps}")
    upper = 1.0 if model is ModelKind.MA else 0.5
    return [upper * i / (steps + 1) for i in range(1, steps + 1)]


def _cmd_bifurcation(args: argparse.Namespace) -> int:
    model = ModelKind.MA if args.model == "ma" else ModelKind.MB
    grid = _rho_grid(model, args.steps)
    scan = bifurcation_scan(model, args.kappa, grid)
    lines = [
        f"model = {model.value}",
        f"kappa = {_fmt(args.kappa)}",
        f"grid = {len(grid)} points in (0, {'1' if model is ModelKind.MA else '0.5'})",
    ]
    if scan.breakpoints:
        for lo, hi in scan.breakpoints:
            lines.append(f"breakpoint between rho = {_fmt(lo)} and rho = {_fmt(hi)}")
    else:
        lines.append("no breakpoint")
    _emit(lines, args.out)
    if args.csv:
        rows = ["rho,type"]
        rows.extend(
            f"{_fmt(r)},{label.value}" for r, label in zip(scan.grid, scan.labels)
        )
        _write(args.csv, "\n".join(rows) + "\n")
    return 0


def _cmd_sensitivity(args: argparse.Namespace) -> int:
    model, p = _params_from_flags(args)
    indices = sensitivity_indices(model, p)
    case = ordering_case(model, p)
    fd_err = finite_diff_check(model, p, args.fd_step)
    lines = [f"model = {model.value}", "indices:"]
    for name, value in indices.as_dict().items():
        lines.append(f"  Upsilon_{name} = {_fmt(value)}")
    lines.append(f"ordering case = {case.label}")
    if case.chain:
        lines.append("ascending: " + " < ".join(case.chain))
    else:
        lines.append("ascending: (on a breakpoint; no strict chain)")
    lines.append(
        f"finite-diff max relative error = {fd_err:.3g} (h = {args.fd_step:g})"
    )
    _emit(lines, args.out)
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    presets = {preset.name: preset for preset in covid_mitigation_presets()}
    preset = presets[args.preset]
    grid = [i / (args.steps + 1) for i in range(1, args.steps + 1)]
    result = participation_scan(preset, args.capacity, grid)
    lines = [
        f"preset = {result.preset}",
        f"capacity = {_fmt(result.capacity)}",
        f"grid = {len(result.grid)} fractions in (0, 1)",
    ]
    if result.minimal_compliant is None:
        lines.append("minimal compliant fraction: none within capacity")
    else:
        q = result.minimal_compliant
        peak = result.peak_I[result.grid.index(q)]
        lines.append(f"minimal compliant fraction = {_fmt(q)}")
        lines.append(f"peak infected at that fraction = {_fmt(peak)}")
    lines.append(f"peaks non-increasing along grid = {'yes' if result.monotone else 'no'}")
    _emit(lines, args.out)
    return 0


def _add_rate_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--model", choices=("ma", "mb"), required=True)
    sub.add_argument("--beta1", type=float, required=True)
    sub.add_argument("--beta2", type=float, required=True)
    sub.add_argument("--kappa", type=float, required=True)
    sub.add_argument("--rho", type=float, help="class-1 fraction (model ma)")
    sub.add_argument("--alpha1", type=float, help="1->2 switch rate (model mb)")
    sub.add_argument("--alpha2", type=float, help="2->1 switch rate (model mb)")
    sub.add_argument("--N", type=float, default=100.0, help="population (default 100)")
    sub.add_argument(
        "--allow-beta-gt-one",
        action="store_true",
        help="lift the beta upper bounds (disables feasibility geometry)",
    )
    sub.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socsir",
        description="Two-class SIR models: simulation and threshold analysis.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sim = commands.add_parser("simulate", help="integrate a configured scenario")
    sim.add_argument("--config", required=True, help="scenario JSON document")
    sim.add_argument("--csv", help="write the trajectory table here")
    sim.add_argument("--svg", help="write a line plot here")
    sim.add_argument("--out", help="write the report here instead of stdout")
    sim.add_argument("--allow-beta-gt-one", action="store_true")
    sim.set_defaults(handler=_cmd_simulate)

    mixed = commands.add_parser(
        "mixed", help="run the single-then-two-class composite scenario"
    )
    mixed.add_argument("--config", required=True, help='JSON document with a "mixed" block')
    mixed.add_argument("--csv", help="write the trajectory table here")
    mixed.add_argument("--svg", help="write a line plot here")
    mixed.add_argument("--out", help="write the report here instead of stdout")
    mixed.add_argument("--allow-beta-gt-one", action="store_true")
    mixed.set_defaults(handler=_cmd_mixed)

    r0_cmd = commands.add_parser("r0", help="basic reproduction number")
    _add_rate_flags(r0_cmd)
    r0_cmd.set_defaults(handler=_cmd_r0)

    stab = commands.add_parser("stability", help="DFE stability verdict")
    _add_rate_flags(stab)
    stab.set_defaults(handler=_cmd_stability)

    feas = commands.add_parser(
        "feasibility", help="type and vertices of the rho-feasible set"
    )
    feas.add_argument("--model", choices=("ma", "mb"), required=True)
    feas.add_argument("--kappa", type=float, required=True)
    feas.add_argument("--rho", type=float, required=True)
    feas.add_argument("--out", help="write the report here instead of stdout")
    feas.set_defaults(handler=_cmd_feasibility)

    bif = commands.add_parser(
        "bifurcation", help="scan rho for feasible-set type changes"
    )
    bif.add_argument("--model", choices=("ma", "mb"), required=True)
    bif.add_argument("--kappa", type=float, required=True)
    bif.add_argument("--steps", type=int, required=True, help="grid size")
    bif.add_argument("--csv", help="write rho,type rows here")
    bif.add_argument("--out", help="write the report here instead of stdout")
    bif.set_defaults(handler=_cmd_bifurcation)

    sens = commands.add_parser(
        "sensitivity", help="R0 sensitivity indices and their ordering"
    )
    _add_rate_flags(sens)
    sens.add_argument(
        "--fd-step",
        type=float,
        default=1e-6,
        help="relative step of the finite-difference cross-check",
    )
    sens.set_defaults(handler=_cmd_sensitivity)

    scan = commands.add_parser(
        "scan-participation",
        help="minimal compliant fraction keeping the peak infected load within capacity",
    )
    scan.add_argument(
        "--preset",
        choices=tuple(p.name for p in covid_mitigation_presets()),
        required=True,
    )
    scan.add_argument("--capacity", type=float, required=True)
    scan.add_argument("--steps", type=int, required=True, help="grid size")
    scan.add_argument("--out", help="write the report here instead of stdout")
    scan.set_defaults(handler=_cmd_scan)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        where = "" if exc.time is None else f" at t = {exc.time:g}"
        print(f"error{where}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover - exercised via the console script
    sys.exit(main())
