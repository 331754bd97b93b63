"""
Moments of permanents of k x k complex Gaussian matrices.

Provides:
- Exact E|Perm|^{2t} from magic squares, with closed forms for min(k, t) <= 2
- Truncated-expansion lower bounds and their large-t limit
"""
import logging
from fractions import Fraction
from math import factorial, prod

from permoments.combinatorics.partitions import Partition, hook_dim
from permoments.config import Settings, get_settings
from permoments.exceptions import ValidityRangeError
from permoments.schemas.moment import BoundValue, Ensemble, MomentReport
from permoments.services.moments.determinant import det_moment_gaussian
from permoments.services.moments.magic_squares import (
    birkhoff_counter,
    check_square_budget,
)
from permoments.services.traces.two_row import trace_rcrc_two_row

logger = logging.getLogger('permoments.moments.gaussian')

LOWER_BOUND_SELECTORS = ("base", "four-term", "thirteen-eighths")


def _check_dims(k: int, t: int) -> None:
    if k < 1 or t < 1:
        raise ValidityRangeError("k >= 1 and t >= 1", f"got k={k}, t={t}")


def normalization_base(k: int, t: int) -> Fraction:
    """k!^{2t} t!^{2k} / (kt)!, the contribution of the one-row shape."""
    return Fraction(factorial(k) ** (2 * t) * factorial(t) ** (2 * k), factorial(k * t))


def gaussian_moment_value(
    k: int, t: int, settings: Settings | None = None
) -> tuple[int, str]:
    """Exact E|Perm|^{2t} and the method tag that produced it."""
    settings = settings or get_settings()
    _check_dims(k, t)
    side, other = sorted((k, t))
    if side == 1:
        return factorial(other), "closed-form"
    if side == 2:
        return factorial(other) * factorial(other + 1), "closed-form"
    check_square_budget(side, other, settings)
    return birkhoff_counter(side).moment(other), "magic-square"


def _bounds(k: int, t: int) -> list[BoundValue]:
    bounds = [
        BoundValue(name="base", value=normalization_base(k, t)),
        BoundValue(name="determinant", value=det_moment_gaussian(k, t)),
    ]
    for selector in ("four-term", "thirteen-eighths"):
        try:
            bounds.append(
                BoundValue(
                    name=selector, value=gaussian_moment_lower_bound(k, t, selector)
                )
            )
        except ValidityRangeError:
            continue
    return bounds


def gaussian_moment_exact(
    k: int, t: int, settings: Settings | None = None
) -> MomentReport:
    """
    E|Perm(M)|^{2t} for M with i.i.d. standard complex Gaussian entries.

    The k x t and t x k problems are equal, so the magic squares are built on
    the smaller side.
    """
    value, method = gaussian_moment_value(k, t, settings)
    ratio = value / normalization_base(k, t)
    logger.info(f"Gaussian moment k={k} t={t}: {value} ({method})")
    return MomentReport(
        ensemble=Ensemble.GAUSSIAN,
        k=k,
        t=t,
        value=value,
        ratio_exact=ratio,
        bounds=_bounds(k, t),
        method=method,
    )


def gaussian_moment_series(
    k: int, t_max: int, settings: Settings | None = None
) -> list[MomentReport]:
    """Reports for t = 1..t_max, sharing one orbit counter."""
    return [gaussian_moment_exact(k, t, settings) for t in range(1, t_max + 1)]


# ============================================================================
# LOWER BOUNDS
# ============================================================================


def three_row_trace(k: int, t: int) -> Fraction:
    """tr rho_{(kt-4,2,2)}(RC) for k, t >= 3."""
    if k < 3 or t < 3:
        raise ValidityRangeError("k >= 3 and t >= 3", f"got k={k}, t={t}")
    return Fraction(
        factorial(k) ** t * factorial(t) ** k * (k - 2) * (t - 2),
        (k - 1) * k**2 * (t - 1) * t**2,
    )


def _three_row_term(k: int, t: int) -> Fraction:
    n = k * t
    f = hook_dim(Partition.of(n - 4, 2, 2))
    return f * three_row_trace(k, t) ** 2 / factorial(n)


def _two_row_term(k: int, t: int, a: int) -> Fraction:
    n = k * t
    f = hook_dim(Partition.of(n - a, a)) if a else 1
    return Fraction(f * trace_rcrc_two_row(k, t, a), factorial(n))


def _truncated_sum(k: int, t: int, depth: int) -> Fraction:
    n = k * t
    top = min(depth, n // 2) if min(k, t) >= 2 else 0
    total = sum((_two_row_term(k, t, a) for a in range(top + 1)), Fraction(0))
    if depth >= 4 and k >= 3 and t >= 3:
        total += _three_row_term(k, t)
    return total


def gaussian_moment_lower_bound(
    k: int, t: int, depth: int | str = "four-term"
) -> Fraction:
    """
    Lower bound on E|Perm|^{2t} from nonnegative terms of the expansion.

    An integer depth keeps the two-row shapes (kt-a, a) with a <= depth, plus
    (kt-4,2,2) once depth >= 4. Named selectors give the closed forms:
    "base" (one-row shape only), "four-term" (k, t >= 3) and
    "thirteen-eighths" (k, t >= 4).
    """
    _check_dims(k, t)
    base = normalization_base(k, t)
    if isinstance(depth, int):
        if depth < 0:
            raise ValueError(f"Truncation depth must be nonnegative, got {depth}")
        return _truncated_sum(k, t, depth)
    if depth == "base":
        return base
    if depth == "four-term":
        if k < 3 or t < 3:
            raise ValidityRangeError("k >= 3 and t >= 3", f"got k={k}, t={t}")
        n = Fraction(k * t)
        factor = (
            Fraction(3, 2) + Fraction(7, 6) / n - 16 / n**2 + Fraction(40, 3) / n**3
        )
        return factor * base
    if depth == "thirteen-eighths":
        if k < 4 or t < 4:
            raise ValidityRangeError("k >= 4 and t >= 4", f"got k={k}, t={t}")
        return Fraction(13, 8) * base
    raise ValueError(
        f"Unknown selector {depth!r}; expected an int or one of {LOWER_BOUND_SELECTORS}"
    )


def _extrapolate_to_zero(nodes: list[Fraction], values: list[Fraction]) -> Fraction:
    """Value at h = 0 of the interpolating polynomial through (nodes, values)."""
    total = Fraction(0)
    for i, (hi, vi) in enumerate(zip(nodes, values)):
        weight = prod(
            (-hj / (hi - hj) for j, hj in enumerate(nodes) if j != i), start=Fraction(1)
        )
        total += vi * weight
    return total


def deep_truncation_limit(
    k: int, depth: int = 10, start: int | None = None, points: int = 16
) -> Fraction:
    """
    Large-t limit of the depth-truncated bound divided by the base term.

    Each ratio is a rational function of t, so polynomial extrapolation in
    1/t from two windows of exact values pins the limit; the result is the
    simplest fraction within 1e-12 of both.
    """
    start = start or 12 * max(depth, 1)

    def window(first: int) -> Fraction:
        ts = range(first, first + points)
        ratios = [_truncated_sum(k, t, depth) / normalization_base(k, t) for t in ts]
        return _extrapolate_to_zero([Fraction(1, t) for t in ts], ratios)

    near, far = window(start), window(start + points)
    if abs(near - far) > Fraction(1, 10**12):
        raise ArithmeticError(
            f"Extrapolation did not settle for k={k}: {float(near)} vs {float(far)}"
        )
    limit = far.limit_denominator(10**6)
    logger.info(f"Deep truncation limit k={k}, depth={depth}: {limit}")
    return limit
