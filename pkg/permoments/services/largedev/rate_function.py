"""
Tail of the log-permanent of Gaussian matrices.

Provides:
- The scaled cumulant generating function lambda(t), exact for t <= 2 and
  t >= 3, bracketed by [0, log(4/3)] on (2, 3)
- The rate function I(y) = sup_t (2ty - lambda(t)) and omega(y) = I / e^{2y+1}
- The determinant counterparts lambda(t) = t(t-1)/2 and I(z) = 2(z + 1/4)^2
- A numerical Legendre transform for cross-checking

All values here are binary64.
"""
import logging
import math
from collections.abc import Callable, Iterable

from scipy.optimize import brentq, minimize_scalar
from scipy.special import digamma, gammaln

from permoments.exceptions import OutOfBranchError
from permoments.schemas.rate import (
    LambdaPoint,
    RateBounds,
    RateFunctionPoint,
    ValueInterval,
)

logger = logging.getLogger('permoments.largedev')

LOG_FOUR_THIRDS = math.log(4 / 3)
SMALL_Y_LIMIT = LOG_FOUR_THIRDS / 6
BRANCH_START_T = 3.0
TSTAR_XTOL = 1e-12


def _check_t(t: float) -> None:
    if t < 0:
        raise ValueError(f"lambda(t) needs t >= 0, got {t}")


def lambda_exact(t: float) -> float:
    """2 log Gamma(t+1) - t log t on the t >= 3 branch."""
    return float(2 * gammaln(t + 1) - t * math.log(t))


def lambda_derivative(t: float) -> float:
    """lambda'(t) = 2 psi(t+1) - log t - 1 on the t >= 3 branch."""
    return float(2 * digamma(t + 1) - math.log(t) - 1)


def lambda_scgf(t: float) -> LambdaPoint:
    """lambda(t); on (2, 3) only the interval [0, log(4/3)] is certified."""
    _check_t(t)
    if t <= 2:
        return LambdaPoint(t=t, value=0.0)
    if t < BRANCH_START_T:
        return LambdaPoint(
            t=t, interval=ValueInterval(lower=0.0, upper=LOG_FOUR_THIRDS)
        )
    return LambdaPoint(t=t, value=lambda_exact(t))


# Smallest y with an optimizer t* >= 3.
BRANCH_BOUNDARY_Y = lambda_derivative(BRANCH_START_T) / 2


def solve_tstar(y: float) -> float:
    """Root t* > 3 of lambda'(t) = 2y."""
    if y <= BRANCH_BOUNDARY_Y:
        raise OutOfBranchError(
            f"y={y} is outside the computed branch",
            f"requires y > {BRANCH_BOUNDARY_Y:.12g} (t* > 3)",
        )

    def gap(t: float) -> float:
        return lambda_derivative(t) - 2 * y

    upper = max(2 * BRANCH_START_T, 2 * math.exp(2 * y + 1))
    while gap(upper) < 0:
        upper *= 2
    return float(brentq(gap, BRANCH_START_T, upper, xtol=TSTAR_XTOL))


def rate_function(y: float) -> RateFunctionPoint | RateBounds:
    """
    I(y) on the differentiable branch, or certified bounds elsewhere.

    For 0 <= y <= log(4/3)/6 the bounds are [4y, 6y]. Between that and the
    branch boundary only [max(4y, 6y - log(4/3)), 6y] is known.
    """
    if y < 0:
        raise ValueError(f"Rate function is evaluated for y >= 0, got {y}")
    if y <= SMALL_Y_LIMIT:
        return RateBounds(
            y=y, bounds=ValueInterval(lower=4 * y, upper=6 * y), branch="small-y"
        )
    if y <= BRANCH_BOUNDARY_Y:
        lower = max(4 * y, 6 * y - LOG_FOUR_THIRDS)
        return RateBounds(
            y=y, bounds=ValueInterval(lower=lower, upper=6 * y), branch="gap"
        )
    t_star = solve_tstar(y)
    rate = 2 * y * t_star - lambda_exact(t_star)
    return RateFunctionPoint(
        y=y, t_star=t_star, rate=rate, omega=rate / math.exp(2 * y + 1)
    )


def omega_asymptotic(y: float) -> float:
    """Large-y expansion 1 - log(2 pi t*) / (t* + 1)."""
    t_star = solve_tstar(y)
    return 1 - math.log(2 * math.pi * t_star) / (t_star + 1)


def det_scgf(t: float) -> float:
    """lambda(t) = t(t-1)/2 for determinants."""
    _check_t(t)
    return t * (t - 1) / 2


def det_rate_function(z: float) -> float:
    """I(z) = 2(z + 1/4)^2."""
    if z < 0:
        raise ValueError(f"Determinant rate function needs z >= 0, got {z}")
    return 2 * (z + 0.25) ** 2


def legendre_transform(
    f: Callable[[float], float], y: float, bounds: tuple[float, float] = (0.0, 50.0)
) -> float:
    """sup over t in bounds of 2ty - f(t), by bounded scalar minimization."""
    result = minimize_scalar(
        lambda t: f(t) - 2 * t * y,
        bounds=bounds,
        method="bounded",
        options={"xatol": 1e-12},
    )
    if not result.success:
        raise ArithmeticError(f"Legendre transform at y={y} failed: {result.message}")
    return float(-result.fun)


def emit_omega_curve(y_grid: Iterable[float]) -> list[RateFunctionPoint]:
    """(y, t*, I, omega) rows; every y must lie on the computed branch."""
    rows = []
    for y in y_grid:
        point = rate_function(y)
        if isinstance(point, RateBounds):
            raise OutOfBranchError(
                f"y={y} is outside the computed branch",
                f"requires y > {BRANCH_BOUNDARY_Y:.12g}",
            )
        rows.append(point)
    logger.debug(f"omega curve: {len(rows)} points")
    return rows


def emit_lambda_curve(t_grid: Iterable[float]) -> list[LambdaPoint]:
    return [lambda_scgf(t) for t in t_grid]
