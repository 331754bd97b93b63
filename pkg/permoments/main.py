"""
Command line entry point.

    permoments moments gaussian --k 3 --t 4 --format json
    permoments traces rc --k 3 --t 3
    permoments tables section-4-6 --k 3 --t-max 10
    permoments ldev omega --y 0.25 0.5 1 2 4

Exit codes: 0 success, 2 usage or shape error, 3 resource budget exceeded,
4 unsupported parameters.
"""
import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from permoments import __description__, __version__
from permoments.combinatorics.partitions import Partition
from permoments.combinatorics.plethysm import (
    plethysm_oracle,
    plethysm_special,
    plethysm_two_row,
)
from permoments.config import Settings, get_settings, setup_logging
from permoments.exceptions import (
    PermomentsError,
    ResourceBudgetError,
    ShapeMismatchError,
    UnsupportedParameterError,
)
from permoments.schemas.base import format_exact
from permoments.schemas.estimate import SampleConfig
from permoments.schemas.moment import BoundValue, Ensemble, MomentReport
from permoments.schemas.rate import RateBounds, RateFunctionPoint
from permoments.schemas.trace import GridSpec, TraceKind, TraceMethod
from permoments.services.export import (
    det_rate_csv,
    estimate_csv,
    lambda_csv,
    moment_human,
    moment_table_csv,
    moments_csv,
    normalized_k3_csv,
    omega_csv,
    rate_bounds_csv,
    render_csv,
    render_json,
    trace_csv,
    trace_factor_csv,
)
from permoments.services.largedev import (
    det_rate_function,
    emit_lambda_curve,
    emit_omega_curve,
    omega_asymptotic,
    rate_function,
)
from permoments.services.moments import (
    LOWER_BOUND_SELECTORS,
    deep_truncation_limit,
    det_moment_gaussian,
    det_moment_unitary_minor,
    gaussian_moment_exact,
    gaussian_moment_lower_bound,
    gaussian_moment_series,
    hunter_jones_conjecture,
    hunter_jones_relative_error,
    unitary_minor_lower_bound,
    unitary_minor_moment,
)
from permoments.services.montecarlo import estimate_moments
from permoments.services.traces import TraceService, trace_bruteforce

logger = logging.getLogger('permoments.cli')

FORMATS = ("human", "json", "csv")


# ============================================================================
# PARSER
# ============================================================================


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers: {text}"
        ) from exc


def _shape(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _depth(text: str) -> int | str:
    if text.isdigit():
        return int(text)
    if text in LOWER_BOUND_SELECTORS:
        return text
    raise argparse.ArgumentTypeError(
        f"expected an integer or one of {', '.join(LOWER_BOUND_SELECTORS)}"
    )


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument(
        "--threads", type=int, default=None, help="default: PERMOMENTS_THREADS"
    )
    common.add_argument(
        "--force", action="store_true", help="lift resource budgets (with a warning)"
    )
    common.add_argument("--output", type=Path, default=None)
    common.add_argument("--log-level", default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="permoments", description=__description__)
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    # moments
    moments = commands.add_parser("moments", help="exact moments")
    moment_kinds = moments.add_subparsers(dest="kind", required=True)
    gaussian = moment_kinds.add_parser("gaussian", parents=[common])
    gaussian.add_argument("--k", type=int, required=True)
    t_group = gaussian.add_mutually_exclusive_group(required=True)
    t_group.add_argument("--t", type=int)
    t_group.add_argument("--t-max", type=int)
    gaussian.set_defaults(handler=_moments_gaussian)

    unitary = moment_kinds.add_parser("unitary", parents=[common])
    for name in ("--d", "--k", "--t"):
        unitary.add_argument(name, type=int, required=True)
    unitary.set_defaults(handler=_moments_unitary)

    det = moment_kinds.add_parser("det", help="determinant moments")
    det_kinds = det.add_subparsers(dest="ensemble", required=True)
    det_gaussian = det_kinds.add_parser("gaussian", parents=[common])
    det_gaussian.add_argument("--k", type=int, required=True)
    det_gaussian.add_argument("--t", type=int, required=True)
    det_gaussian.set_defaults(handler=_moments_det)
    det_unitary = det_kinds.add_parser("unitary", parents=[common])
    for name in ("--d", "--k", "--t"):
        det_unitary.add_argument(name, type=int, required=True)
    det_unitary.set_defaults(handler=_moments_det)

    # bounds
    bounds = commands.add_parser("bounds", help="lower bounds")
    bound_kinds = bounds.add_subparsers(dest="kind", required=True)
    bound_gaussian = bound_kinds.add_parser("gaussian", parents=[common])
    bound_gaussian.add_argument("--k", type=int, required=True)
    bound_gaussian.add_argument("--t", type=int, required=True)
    bound_gaussian.add_argument("--depth", type=_depth, default=None)
    bound_gaussian.set_defaults(handler=_bounds_gaussian)
    bound_limit = bound_kinds.add_parser("gaussian-limit", parents=[common])
    bound_limit.add_argument("--k", type=int, required=True)
    bound_limit.add_argument("--depth", type=int, default=10)
    bound_limit.set_defaults(handler=_bounds_limit)
    bound_unitary = bound_kinds.add_parser("unitary", parents=[common])
    for name in ("--d", "--k", "--t"):
        bound_unitary.add_argument(name, type=int, required=True)
    bound_unitary.set_defaults(handler=_bounds_unitary)

    # traces
    traces = commands.add_parser("traces", help="trace tables")
    trace_kinds = traces.add_subparsers(dest="kind", required=True)
    for kind in TraceKind:
        sub = trace_kinds.add_parser(kind.value.lower(), parents=[common])
        sub.add_argument("--k", type=int, required=True)
        sub.add_argument("--t", type=int, required=True)
        sub.add_argument("--shape", type=_shape, default=None)
        sub.add_argument(
            "--prefer-polynomial",
            action="store_true",
            help="use the tabulated polynomial family where it applies",
        )
        sub.add_argument(
            "--brute-force",
            action="store_true",
            help="enumerate the permutation modules directly (small grids)",
        )
        sub.set_defaults(handler=_traces, trace_kind=kind)
    brute = trace_kinds.add_parser("brute", parents=[common])
    brute.add_argument("--k", type=int, required=True)
    brute.add_argument("--t", type=int, required=True)
    brute.add_argument("--distribution", action="store_true")
    brute.set_defaults(handler=_traces_brute)

    # tables
    tables = commands.add_parser("tables", help="reference tables (CSV)")
    table_kinds = tables.add_subparsers(dest="table", required=True)
    appendix_a = table_kinds.add_parser("appendix-a", parents=[common])
    appendix_a.add_argument("--k", type=int, required=True)
    appendix_a.add_argument("--t", type=int, required=True)
    appendix_a.set_defaults(handler=_table_traces)
    appendix_b = table_kinds.add_parser("appendix-b", parents=[common])
    appendix_b.add_argument("--t-max", type=int, required=True)
    appendix_b.set_defaults(handler=_table_normalized)
    section = table_kinds.add_parser("section-4-6", parents=[common])
    section.add_argument("--k", type=int, required=True)
    section.add_argument("--t-max", type=int, required=True)
    section.set_defaults(handler=_table_moments)

    # pleth
    pleth = commands.add_parser("pleth", parents=[common], help="plethysm coefficient")
    pleth.add_argument("--k", type=int, required=True)
    pleth.add_argument("--t", type=int, required=True)
    pleth.add_argument("--shape", type=_shape, required=True)
    pleth.set_defaults(handler=_pleth)

    # mc
    mc = commands.add_parser("mc", help="Monte Carlo")
    mc_kinds = mc.add_subparsers(dest="kind", required=True)
    estimate = mc_kinds.add_parser("estimate", parents=[common])
    estimate.add_argument(
        "--ensemble",
        choices=[e.value for e in Ensemble],
        default=Ensemble.GAUSSIAN.value,
    )
    estimate.add_argument("--k", type=int, required=True)
    estimate.add_argument("--d", type=int, default=None)
    estimate.add_argument("--samples", type=int, required=True)
    estimate.add_argument("--seed", type=int, default=0)
    estimate.add_argument("--orders", type=_int_list, default=[1, 2])
    estimate.add_argument("--shard-size", type=int, default=None)
    estimate.add_argument("--dump", type=Path, default=None)
    estimate.set_defaults(handler=_mc_estimate)

    # ldev
    ldev = commands.add_parser(
        "ldev",
        help="large deviations (CSV, 12 significant digits)",
        description=(
            "lambda: t,lambda,lower,upper (interval on (2,3)); "
            "omega: y,t_star,rate,omega,omega_asymptotic; "
            "rate: y,lower,upper,branch for y off the branch; "
            "det-rate: z,rate"
        ),
    )
    ldev_kinds = ldev.add_subparsers(dest="kind", required=True)
    for name, flag, handler in (
        ("lambda", "--t", _ldev_lambda),
        ("omega", "--y", _ldev_omega),
        ("rate", "--y", _ldev_rate),
        ("det-rate", "--z", _ldev_det),
    ):
        sub = ldev_kinds.add_parser(name, parents=[common])
        sub.add_argument(flag, type=float, nargs="+", required=True, dest="grid")
        sub.set_defaults(handler=handler)
    return parser


# ============================================================================
# HANDLERS
# ============================================================================


def _fmt(args: argparse.Namespace, default: str = "human") -> str:
    return args.format or default


def _moments_gaussian(args: argparse.Namespace, settings: Settings) -> str:
    if args.t_max is not None:
        reports = gaussian_moment_series(args.k, args.t_max, settings)
        fmt = _fmt(args, "csv")
        if fmt == "json":
            return render_json(reports)
        if fmt == "csv":
            return moments_csv(reports)
        return "".join(moment_human(r) for r in reports)
    return _emit_report(gaussian_moment_exact(args.k, args.t, settings), args)


def _moments_unitary(args: argparse.Namespace, settings: Settings) -> str:
    return _emit_report(unitary_minor_moment(args.d, args.k, args.t, settings), args)


def _moments_det(args: argparse.Namespace, settings: Settings) -> str:
    if args.ensemble == "gaussian":
        report = MomentReport(
            ensemble=Ensemble.DET_GAUSSIAN,
            k=args.k,
            t=args.t,
            value=det_moment_gaussian(args.k, args.t),
            method="hook-product",
        )
    else:
        report = MomentReport(
            ensemble=Ensemble.DET_UNITARY_MINOR,
            k=args.k,
            t=args.t,
            d=args.d,
            value=det_moment_unitary_minor(args.d, args.k, args.t),
            method="hook-product",
        )
    return _emit_report(report, args)


def _emit_report(report: MomentReport, args: argparse.Namespace) -> str:
    fmt = _fmt(args)
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return moments_csv([report])
    return moment_human(report)


def _emit_bounds(bounds: list[BoundValue], args: argparse.Namespace) -> str:
    fmt = _fmt(args)
    if fmt == "json":
        return render_json(bounds)
    if fmt == "csv":
        return render_csv(
            ["name", "value", "approx"],
            ([b.name, format_exact(b.value), b.approx] for b in bounds),
        )
    return "".join(f"{b.name} {format_exact(b.value)}\n" for b in bounds)


def _bounds_gaussian(args: argparse.Namespace, settings: Settings) -> str:
    if args.depth is not None:
        name = str(args.depth)
        value = gaussian_moment_lower_bound(args.k, args.t, args.depth)
        return _emit_bounds([BoundValue(name=name, value=value)], args)
    bounds = [
        BoundValue(
            name="base", value=gaussian_moment_lower_bound(args.k, args.t, "base")
        )
    ]
    for selector in LOWER_BOUND_SELECTORS[1:]:
        try:
            value = gaussian_moment_lower_bound(args.k, args.t, selector)
        except UnsupportedParameterError as exc:
            logger.info(f"Skipping {selector}: {exc.message}")
            continue
        bounds.append(BoundValue(name=selector, value=value))
    return _emit_bounds(bounds, args)


def _bounds_limit(args: argparse.Namespace, settings: Settings) -> str:
    value = deep_truncation_limit(args.k, depth=args.depth)
    bound = BoundValue(name=f"limit-depth-{args.depth}", value=value)
    return _emit_bounds([bound], args)


def _bounds_unitary(args: argparse.Namespace, settings: Settings) -> str:
    bounds = [
        BoundValue(
            name="inverse-binomial",
            value=unitary_minor_lower_bound(args.d, args.k, args.t),
        )
    ]
    if args.d == args.k:
        bounds.append(
            BoundValue(
                name="hunter-jones", value=hunter_jones_conjecture(args.d, args.t)
            )
        )
        try:
            error = hunter_jones_relative_error(args.d, args.t, settings)
            logger.info(f"Hunter-Jones relative error: {error:.6g}")
        except UnsupportedParameterError:
            pass
    return _emit_bounds(bounds, args)


def _traces(args: argparse.Namespace, settings: Settings) -> str:
    grid = GridSpec(k=args.k, t=args.t)
    service = TraceService(settings)
    prefer = None
    if args.brute_force:
        prefer = TraceMethod.BRUTE_FORCE
    elif args.prefer_polynomial:
        prefer = TraceMethod.POLYNOMIAL_TABLE
    fmt = _fmt(args)
    if args.shape is not None:
        if args.shape.size != grid.boxes:
            raise ShapeMismatchError(
                f"Shape {args.shape} has {args.shape.size} boxes, grid has {grid.boxes}"
            )
        entry = service.entry(args.shape, grid, args.trace_kind, prefer)
        if fmt == "human":
            return format_exact(entry.value) + "\n"
        if fmt == "json":
            return render_json(entry)
        return render_csv(
            ["shape", "value", "method"],
            [[str(args.shape), format_exact(entry.value), entry.method.value]],
        )
    table = service.build_table(grid, args.trace_kind, prefer)
    if fmt == "json":
        return render_json(table)
    if fmt == "csv":
        return trace_csv(table)
    return "".join(
        f"{e.partition} {format_exact(e.value)}\n" for e in table.nonzero().entries
    )


def _traces_brute(args: argparse.Namespace, settings: Settings) -> str:
    result = trace_bruteforce(GridSpec(k=args.k, t=args.t), args.distribution, settings)
    if not args.distribution or _fmt(args) == "human":
        return f"{result.total}\n"
    return render_csv(
        ["cycle_type", "contribution"],
        (
            [str(shape), format_exact(value)]
            for shape, value in sorted(
                result.profile.items(), key=lambda item: item[0].parts, reverse=True
            )
        ),
    )


def _table_traces(args: argparse.Namespace, settings: Settings) -> str:
    return trace_factor_csv(args.k, args.t, settings)


def _table_normalized(args: argparse.Namespace, settings: Settings) -> str:
    return normalized_k3_csv(args.t_max, settings)


def _table_moments(args: argparse.Namespace, settings: Settings) -> str:
    return moment_table_csv(args.k, args.t_max, settings)


def _pleth(args: argparse.Namespace, settings: Settings) -> str:
    lam: Partition = args.shape
    if lam.size != args.k * args.t:
        raise ShapeMismatchError(f"|{lam}| = {lam.size} but kt = {args.k * args.t}")
    if lam.depth <= 2:
        value = plethysm_two_row(args.k, args.t, lam.parts[1] if lam.depth == 2 else 0)
    else:
        try:
            value = plethysm_oracle(lam, args.k, args.t, settings)
        except (ResourceBudgetError, UnsupportedParameterError):
            value = plethysm_special(lam, args.k, args.t)
    return f"{value}\n"


def _mc_estimate(args: argparse.Namespace, settings: Settings) -> str:
    cfg = SampleConfig(
        ensemble=Ensemble(args.ensemble),
        k=args.k,
        d=args.d,
        samples=args.samples,
        seed=args.seed,
        orders=args.orders,
        shard_size=args.shard_size,
    )
    report = estimate_moments(cfg, settings, dump=args.dump)
    if _fmt(args, "json") == "csv":
        return estimate_csv(report)
    return render_json(report)


def _ldev_lambda(args: argparse.Namespace, settings: Settings) -> str:
    points = emit_lambda_curve(args.grid)
    return render_json(points) if _fmt(args, "csv") == "json" else lambda_csv(points)


def _ldev_omega(args: argparse.Namespace, settings: Settings) -> str:
    points = emit_omega_curve(args.grid)
    if _fmt(args, "csv") == "json":
        return render_json(points)
    return omega_csv(points, [omega_asymptotic(p.y) for p in points])


def _ldev_rate(args: argparse.Namespace, settings: Settings) -> str:
    results = [rate_function(y) for y in args.grid]
    if _fmt(args, "csv") == "json":
        return render_json(results)
    on_branch = [r for r in results if isinstance(r, RateFunctionPoint)]
    off_branch = [r for r in results if isinstance(r, RateBounds)]
    out = ""
    if on_branch:
        out += omega_csv(on_branch)
    if off_branch:
        out += rate_bounds_csv(off_branch)
    return out


def _ldev_det(args: argparse.Namespace, settings: Settings) -> str:
    return det_rate_csv([(z, det_rate_function(z)) for z in args.grid])


# ============================================================================
# ENTRY POINT
# ============================================================================


def _settings_for(args: argparse.Namespace) -> Settings:
    settings = get_settings()
    update: dict[str, object] = {}
    if args.log_level:
        update["LOG_LEVEL"] = args.log_level
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError(f"--threads must be positive, got {args.threads}")
        update["THREADS"] = args.threads
    if update:
        settings = settings.model_copy(update=update)
    setup_logging(settings)
    if args.force:
        settings = settings.forced()
    return settings


def _report_error(message: str, detail: str = "") -> None:
    print(f"error: {message}", file=sys.stderr)
    if detail:
        print(f"  {detail}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one subcommand, write its report. Returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        settings = _settings_for(args)
        output = args.handler(args, settings)
    except PermomentsError as exc:
        _report_error(exc.message, exc.detail)
        return exc.exit_code
    except (ValidationError, ValueError) as exc:
        _report_error(str(exc))
        return 2

    if args.output is not None:
        args.output.write_text(output, encoding="utf-8")
        logger.info(f"Wrote {args.output}")
    else:
        sys.stdout.write(output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
