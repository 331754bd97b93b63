"""
Moments of permanents of k x k minors of Haar unitary matrices.

Provides:
- Exact E|Perm U_k|^{2t} on the supported parameter set
- The inverse-binomial lower bound
- The Hunter-Jones estimate for full unitaries and its relative error
"""
import logging
from fractions import Fraction
from math import comb, factorial

from permoments.combinatorics.partitions import hook_dim, weyl_dim
from permoments.config import Settings, get_settings
from permoments.exceptions import UnsupportedParameterError, ValidityRangeError
from permoments.schemas.moment import BoundValue, Ensemble, MomentReport
from permoments.schemas.trace import GridSpec, TraceKind
from permoments.services.traces.trace_service import TraceService

logger = logging.getLogger('permoments.moments.unitary')

# Grids with three-row RCRC traces available through the Psi route.
THREE_ROW_GRIDS = frozenset({(3, 3), (3, 4), (4, 3)})

SUPPORTED = (
    "t = 1; t = 2; k = 1; min(k, t) <= 2; "
    f"(k, t) in {sorted(THREE_ROW_GRIDS)}"
)


def _check_minor(d: int, k: int, t: int) -> None:
    if not 1 <= k <= d:
        raise ValidityRangeError("1 <= k <= d", f"got d={d}, k={k}")
    if t < 1:
        raise ValidityRangeError("t >= 1", f"got t={t}")


def _second_moment(d: int, k: int) -> Fraction:
    """E|Perm U_k|^4 as a single sum over a <= k/2 (d >= 2)."""
    total = Fraction(0)
    for a in range(k // 2 + 1):
        total += (
            Fraction(4 ** (k - 2 * a) * (2 * k - 4 * a + 1), 2 * k - 2 * a + 1)
            * Fraction(comb(2 * a, a), comb(2 * k - 2 * a, k - a))
            * Fraction(
                factorial(k) ** 2,
                factorial(2 * a + d - 2) * factorial(2 * k - 2 * a + d - 1),
            )
        )
    return factorial(d - 1) * factorial(d - 2) * total


def _expansion(d: int, k: int, t: int, settings: Settings) -> Fraction:
    """sum_lam (1/WD_lam(d)) (f^lam/(kt)!)^2 tr rho_lam(RCRC), lam of depth <= d."""
    grid = GridSpec(k=k, t=t)
    table = TraceService(settings).build_table(grid, TraceKind.RCRC)
    n_fact = factorial(grid.boxes)
    total = Fraction(0)
    for entry in table.entries:
        lam = entry.partition
        wd = weyl_dim(lam, d)
        if wd == 0 or entry.value == 0:
            continue
        total += Fraction(hook_dim(lam), n_fact) ** 2 * entry.value / wd
    return total


def unitary_minor_value(
    d: int, k: int, t: int, settings: Settings | None = None
) -> tuple[Fraction, str]:
    """Exact moment and the method tag that produced it."""
    settings = settings or get_settings()
    _check_minor(d, k, t)
    if t == 1:
        return Fraction(1, comb(k + d - 1, k)), "closed-form"
    if k == 1:
        return Fraction(1, comb(d + t - 1, t)), "closed-form"
    if t == 2:
        return _second_moment(d, k), "closed-form"
    if min(k, t) <= 2:
        return _expansion(d, k, t, settings), "expansion-two-row"
    if (k, t) in THREE_ROW_GRIDS:
        return _expansion(d, k, t, settings), "expansion-three-row"
    raise UnsupportedParameterError(
        f"No exact unitary-minor moment for d={d}, k={k}, t={t}",
        f"available: {SUPPORTED}",
    )


def unitary_minor_lower_bound(d: int, k: int, t: int) -> Fraction:
    """1 / C(C(d+b-1, b) + a - 1, a) with a = min(k, t), b = max(k, t)."""
    _check_minor(d, k, t)
    a, b = sorted((k, t))
    return Fraction(1, comb(comb(d + b - 1, b) + a - 1, a))


def unitary_minor_moment(
    d: int, k: int, t: int, settings: Settings | None = None
) -> MomentReport:
    """E|Perm U_k|^{2t} for the leading k x k minor of a Haar U(d)."""
    value, method = unitary_minor_value(d, k, t, settings)
    logger.info(f"Unitary minor moment d={d} k={k} t={t}: {value} ({method})")
    return MomentReport(
        ensemble=Ensemble.UNITARY_MINOR,
        k=k,
        t=t,
        d=d,
        value=value,
        bounds=[
            BoundValue(
                name="inverse-binomial", value=unitary_minor_lower_bound(d, k, t)
            )
        ],
        method=method,
    )


def hunter_jones_conjecture(d: int, t: int) -> Fraction:
    """t! / C(2d-1, d)^t"""
    if d < 1 or t < 0:
        raise ValidityRangeError("d >= 1 and t >= 0", f"got d={d}, t={t}")
    return Fraction(factorial(t), comb(2 * d - 1, d) ** t)


def hunter_jones_relative_error(
    d: int, t: int, settings: Settings | None = None
) -> float:
    """1 - conjectured / exact for a full d x d Haar unitary."""
    exact, _ = unitary_minor_value(d, d, t, settings)
    return float(1 - hunter_jones_conjecture(d, t) / exact)
