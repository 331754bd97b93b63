"""
Report rendering: JSON, CSV and plain values.

Exact values are decimal strings (or 'p/q'); floats appear only in ratio and
large-deviation columns, at a fixed number of significant digits.
"""
import csv
import io
from collections.abc import Iterable, Sequence

from pydantic import BaseModel

from permoments.schemas.base import format_exact, format_significant
from permoments.schemas.estimate import EstimateReport
from permoments.schemas.moment import MomentReport
from permoments.schemas.rate import LambdaPoint, RateBounds, RateFunctionPoint
from permoments.schemas.trace import TraceTable

LDEV_DIGITS = 12


def render_csv(headers: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return output.getvalue()


def render_json(model: BaseModel | Sequence[BaseModel]) -> str:
    if isinstance(model, BaseModel):
        return model.model_dump_json(indent=2) + "\n"
    body = ",\n".join(item.model_dump_json(indent=2) for item in model)
    return f"[\n{body}\n]\n"


def _ldev(value: float | None) -> str:
    return "" if value is None else format_significant(value, LDEV_DIGITS)


def moments_csv(reports: Sequence[MomentReport]) -> str:
    return render_csv(
        ["ensemble", "k", "t", "d", "value", "ratio", "method"],
        (
            [
                r.ensemble.value,
                r.k,
                r.t,
                "" if r.d is None else r.d,
                format_exact(r.value),
                r.ratio or "",
                r.method,
            ]
            for r in reports
        ),
    )


def moment_human(report: MomentReport) -> str:
    return format_exact(report.value) + "\n"


def trace_csv(table: TraceTable) -> str:
    return render_csv(
        ["shape", "value", "method"],
        (
            [str(e.partition), format_exact(e.value), e.method.value]
            for e in table.entries
        ),
    )


def estimate_csv(report: EstimateReport) -> str:
    def cell(value: object) -> object:
        return "" if value is None else value

    return render_csv(
        ["t", "mean", "stderr", "exact", "z_score", "gated", "within_threshold"],
        (
            [
                e.t,
                repr(e.mean),
                cell(e.stderr),
                cell(e.exact),
                cell(e.z_score),
                e.gated,
                cell(e.within_threshold),
            ]
            for e in report.estimates
        ),
    )


def lambda_csv(points: Sequence[LambdaPoint]) -> str:
    return render_csv(
        ["t", "lambda", "lower", "upper"],
        (
            [
                _ldev(p.t),
                _ldev(p.value),
                _ldev(p.interval.lower if p.interval else None),
                _ldev(p.interval.upper if p.interval else None),
            ]
            for p in points
        ),
    )


def omega_csv(
    points: Sequence[RateFunctionPoint], asymptotic: Sequence[float] | None = None
) -> str:
    tails = asymptotic or [None] * len(points)
    return render_csv(
        ["y", "t_star", "rate", "omega", "omega_asymptotic"],
        (
            [_ldev(p.y), _ldev(p.t_star), _ldev(p.rate), _ldev(p.omega), _ldev(a)]
            for p, a in zip(points, tails)
        ),
    )


def rate_bounds_csv(points: Sequence[RateBounds]) -> str:
    return render_csv(
        ["y", "lower", "upper", "branch"],
        (
            [_ldev(p.y), _ldev(p.bounds.lower), _ldev(p.bounds.upper), p.branch]
            for p in points
        ),
    )


def det_rate_csv(rows: Sequence[tuple[float, float]]) -> str:
    return render_csv(["z", "rate"], ([_ldev(z), _ldev(rate)] for z, rate in rows))
