"""Command line interface: simulate, bound, search-beta, and mc subcommands.

Angles are accepted only as rational multiples of pi ("p/q"), never as raw
radians, so special angles and pseudo-periods stay exact.  Every command
emits a CSV table (UTF-8, comma separated, LF line endings) with reals at
17 significant digits, which round-trip to the exact double.  Exit codes:
0 success, 2 usage or config parse error, 3 domain precondition violated.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from .beta_search import REFERENCE_BETA_U, search_beta_u
from .bounds import l2_bound, linf_bound
from .engine import Schedule, ScheduleKind, run_km
from .errors import KmrotError, MissingBetaUError
from .rotation import Angle, NormKind, Vec2, norm
from .stochastic import McConfig, NoiseParams, run_stochastic_km

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _angle_arg(text: str) -> Angle:
    try:
        return Angle.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _alpha_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1): got {text}")
    return value


def _vec2_arg(text: str) -> Vec2:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated reals: {text!r}")
    try:
        return Vec2(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: got {text}")
    return value


def _nonneg_float_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0: got {text}")
    return value


def _seed_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer: got {text}")
    return value


def _grid_step_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value <= 1e-3:
        raise argparse.ArgumentTypeError(f"grid step must lie in (0, 1e-3]: got {text}")
    return value


_SCHEDULES = {
    "const": ScheduleKind.CONSTANT,
    "invlog": ScheduleKind.INV_LOG,
    "invsqrt": ScheduleKind.INV_SQRT,
    "invk": ScheduleKind.INV_K,
}


def _schedule_from(args: argparse.Namespace) -> Schedule:
    kind = _SCHEDULES[args.schedule]
    if kind is ScheduleKind.CONSTANT:
        return Schedule.constant(args.alpha)
    return Schedule(kind)


def _bound_values(args: argparse.Namespace, d: float, steps: int) -> tuple[float, ...] | None:
    """Bound curve for a constant-step configuration, None when no formula covers it."""
    if args.schedule != "const":
        return None
    if args.norm == "l2":
        return l2_bound(args.theta, args.alpha, d, steps).values
    beta_u = None
    effective = args.theta if args.theta.fraction <= 1 else args.theta.mirrored()
    if effective.fraction < Fraction(1, 2) and args.alpha == 0.5:
        if args.beta_table == "search":
            beta_u = search_beta_u(effective).beta_u
        else:
            beta_u = REFERENCE_BETA_U.get(effective)
            if beta_u is None:
                raise MissingBetaUError(
                    f"no built-in contraction factor for theta = {effective}; "
                    "run 'search-beta' or pass '--beta-table search'"
                )
    return linf_bound(args.theta, args.alpha, d, steps, beta_u).values


def _cmd_simulate(args: argparse.Namespace) -> tuple[list[str], list[list[str]]]:
    schedule = _schedule_from(args)
    kind = NormKind(args.norm)
    traj = run_km(args.theta, kind, schedule, args.x1, args.steps)
    bound = _bound_values(args, traj.norms[0], args.steps)
    rows = []
    for i, (point, value) in enumerate(zip(traj.points, traj.norms)):
        cell = _fmt(bound[i]) if bound is not None else ""
        rows.append([str(i + 1), _fmt(point.x1), _fmt(point.x2), _fmt(value), cell])
    return ["k", "x1", "x2", "norm_value", "bound_value"], rows


def _cmd_bound(args: argparse.Namespace) -> tuple[list[str], list[list[str]]]:
    d = norm(args.x1, NormKind(args.norm))
    values = _bound_values(args, d, args.steps)
    rows = [[str(i + 1), _fmt(v)] for i, v in enumerate(values)]
    return ["k", "bound_value"], rows


def _cmd_search_beta(args: argparse.Namespace) -> tuple[list[str], list[list[str]]]:
    res = search_beta_u(args.theta, args.grid_step, workers=args.workers)
    row = [
        f"{res.theta.p}/{res.theta.q}",
        str(res.period),
        _fmt(res.beta_u),
        _fmt(res.argmax_start.x1),
        _fmt(res.grid_step),
    ]
    return ["theta", "period", "beta_u", "argmax_t", "grid_step"], [row]


def _cmd_mc(args: argparse.Namespace) -> tuple[list[str], list[list[str]]]:
    cfg = McConfig(
        theta=args.theta,
        alpha=args.alpha,
        x1=args.x1,
        noise=NoiseParams(args.A, args.B),
        replicas=args.replicas,
        steps=args.steps,
        seed=args.seed,
        norm_kind=NormKind(args.norm),
    )
    res = run_stochastic_km(cfg, workers=args.workers)
    rows = []
    for i, (m, se) in enumerate(zip(res.mean_sq_norm, res.std_err)):
        if res.bound is not None:
            bound_cell, flag = _fmt(res.bound.values[i]), "0"
        elif res.unstable:
            bound_cell, flag = "", "1"
        else:
            bound_cell, flag = "", ""
        rows.append([str(i + 1), _fmt(m), _fmt(se), bound_cell, flag])
    return ["k", "mean_sq_norm", "std_err", "bound_sq", "bound_unstable"], rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmrot",
        description="Averaged rotation iterations, their per-iteration bounds, "
        "the max-norm contraction search, and a Monte Carlo noise harness. "
        "The first recorded iterate is x_1 (1-indexed).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_schedule: bool = True) -> None:
        p.add_argument("--theta", type=_angle_arg, required=True, metavar="P/Q",
                       help="rotation angle as a rational multiple of pi")
        p.add_argument("--alpha", type=_alpha_arg, default=0.5, help="step size in (0, 1)")
        p.add_argument("--norm", choices=["l2", "linf"], default="l2")
        p.add_argument("--x1", type=_vec2_arg, default=Vec2(10.0, 30.0), metavar="A,B",
                       help="initial iterate")
        p.add_argument("--steps", type=_positive_int_arg, default=100)
        if with_schedule:
            p.add_argument("--schedule", choices=sorted(_SCHEDULES), default="const")
        p.add_argument("--out", default=None, metavar="PATH", help="output CSV path (default stdout)")

    sim = sub.add_parser("simulate", help="run an iteration and emit iterates, norms, and bound values")
    add_common(sim)
    sim.add_argument("--beta-table", choices=["builtin", "search"], default="builtin",
                     help="source of the per-period contraction factor for small angles")
    sim.set_defaults(handler=_cmd_simulate)

    bnd = sub.add_parser("bound", help="emit a bound curve without running the iteration")
    add_common(bnd)
    bnd.add_argument("--beta-table", choices=["builtin", "search"], default="builtin")
    bnd.set_defaults(handler=_cmd_bound)

    search = sub.add_parser("search-beta", help="brute-force the per-period contraction factor")
    search.add_argument("--theta", type=_angle_arg, required=True, metavar="P/Q")
    search.add_argument("--grid-step", type=_grid_step_arg, default=1e-4)
    search.add_argument("--workers", type=_positive_int_arg, default=1)
    search.add_argument("--out", default=None, metavar="PATH")
    search.set_defaults(handler=_cmd_search_beta)

    mc = sub.add_parser("mc", help="Monte Carlo runs of the noisy iteration")
    add_common(mc, with_schedule=False)
    mc.add_argument("--A", type=_nonneg_float_arg, default=2.0, help="additive noise second moment")
    mc.add_argument("--B", type=_nonneg_float_arg, default=0.0,
                    help="state-proportional noise coefficient")
    mc.add_argument("--replicas", type=_positive_int_arg, default=10_000)
    mc.add_argument("--seed", type=_seed_arg, default=0)
    mc.add_argument("--workers", type=_positive_int_arg, default=1)
    mc.set_defaults(handler=_cmd_mc)

    return parser


def _write_csv(header: list[str], rows: list[list[str]], out: str | None) -> None:
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        header, rows = args.handler(args)
    except KmrotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _write_csv(header, rows, args.out)
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
