"""
Traces through permutation modules Psi_lam.

tr Psi_mu(RC) counts colourings of the k x t grid by type: summing over
ordered row types u and column types w,

    tr Psi_mu(RC) = sum_{u,w} N(u,w)^2 * |Stab_R(u)| * |Stab_C(w)|,

where N(u,w) is the number of 0..l matrices with those types. Irreducible
traces follow by inverting the Kostka matrix restricted to depth <= l(lam).
"""
import logging
from collections.abc import Iterator
from functools import lru_cache

from permoments.combinatorics.partitions import Partition, partitions
from permoments.combinatorics.plethysm import plethysm_bound, plethysm_special
from permoments.combinatorics.symfunc import (
    RowColType,
    column_type_counts,
    restricted_inverse_kostka,
)
from permoments.config import Settings, get_settings
from permoments.exceptions import (
    ResourceBudgetError,
    ShapeMismatchError,
    UnsupportedParameterError,
)
from permoments.schemas.trace import GridSpec
from permoments.services.traces.two_row import trace_rc_two_row, trace_rcrc_two_row

logger = logging.getLogger('permoments.traces.psi')


def _check_shape(lam: Partition, grid: GridSpec) -> None:
    if lam.size != grid.boxes:
        raise ShapeMismatchError(
            f"Shape {lam} has {lam.size} boxes but the grid has {grid.boxes}"
        )


def _count_vectors(symbols: int, bound: int) -> list[tuple[int, ...]]:
    """All count vectors over `symbols` symbols with sum <= bound, descending."""
    out: list[tuple[int, ...]] = []

    def walk(prefix: tuple[int, ...], room: int) -> None:
        if len(prefix) == symbols:
            out.append(prefix)
            return
        for x in range(room, -1, -1):
            walk(prefix + (x,), room - x)

    walk((), bound)
    return out


def row_types(k: int, t: int, targets: tuple[int, ...]) -> Iterator[RowColType]:
    """Canonical row types of k rows (t cells each) with symbol totals `targets`."""
    vectors = _count_vectors(len(targets), t)

    def walk(
        start: int, rows_left: int, remaining: tuple[int, ...]
    ) -> Iterator[tuple[tuple[int, ...], ...]]:
        if rows_left == 0:
            if not any(remaining):
                yield ()
            return
        if sum(remaining) > rows_left * t:
            return
        for idx in range(start, len(vectors)):
            v = vectors[idx]
            if any(x > r for x, r in zip(v, remaining)):
                continue
            rest = tuple(r - x for r, x in zip(remaining, v))
            for tail in walk(idx, rows_left - 1, rest):
                yield (v,) + tail

    for combo in walk(0, k, targets):
        yield RowColType(combo, t)


def _check_psi_budget(lam: Partition, grid: GridSpec, settings: Settings) -> None:
    if lam.depth > settings.PSI_MAX_DEPTH:
        raise ResourceBudgetError("PSI_MAX_DEPTH", lam.depth, settings.PSI_MAX_DEPTH)
    if grid.boxes > settings.PSI_MAX_BOXES:
        raise ResourceBudgetError("PSI_MAX_BOXES", grid.boxes, settings.PSI_MAX_BOXES)


@lru_cache(maxsize=None)
def _trace_psi(parts: tuple[int, ...], k: int, t: int, max_area: int) -> int:
    targets = parts[1:]
    total = 0
    for u in row_types(k, t, targets):
        profile = column_type_counts(u, max_area=max_area)
        inner = sum(
            w.orbit_size() * count * count * w.weight()
            for w, count in profile.items()
        )
        total += u.orbit_size() * u.weight() * inner
    logger.debug(f"tr Psi_{parts} on {k}x{t} = {total}")
    return total


def trace_psi(lam: Partition, grid: GridSpec, settings: Settings | None = None) -> int:
    """tr Psi_lam(RC), summed over canonical row and column types."""
    settings = settings or get_settings()
    _check_shape(lam, grid)
    if lam.depth <= 1:
        return grid.trivial_trace
    _check_psi_budget(lam, grid, settings)
    return _trace_psi(lam.parts, grid.k, grid.t, settings.TYPED_COUNT_MAX_AREA)


def trace_rc_general(
    lam: Partition, grid: GridSpec, settings: Settings | None = None
) -> int:
    """tr rho_lam(RC) = sum_mu (K^{-1})_{lam mu} tr Psi_mu(RC)."""
    settings = settings or get_settings()
    _check_shape(lam, grid)
    if lam.depth > grid.max_depth:
        return 0
    if lam.depth <= 2:
        return trace_rc_two_row(grid.k, grid.t, lam.parts[1] if lam.depth == 2 else 0)
    _check_psi_budget(lam, grid, settings)

    inverse = restricted_inverse_kostka(grid.boxes, lam.depth)
    value = sum(
        coefficient * trace_psi(mu, grid, settings)
        for mu, coefficient in inverse.row_support(lam)
    )
    logger.debug(f"tr RC {lam} on {grid.k}x{grid.t} = {value}")
    return value


def _rank_bound(lam: Partition, grid: GridSpec, settings: Settings) -> int:
    """min(Pl^{k,t}, Pl^{t,k}) from the oracle, or from the tabulated family."""
    try:
        return plethysm_bound(lam, grid.k, grid.t, settings)
    except ResourceBudgetError:
        values = []
        for k, t in ((grid.k, grid.t), (grid.t, grid.k)):
            try:
                values.append(plethysm_special(lam, k, t))
            except UnsupportedParameterError:
                continue
        if not values:
            raise
        return min(values)


def trace_rcrc_general(
    lam: Partition, grid: GridSpec, settings: Settings | None = None
) -> int:
    """
    tr rho_lam(RCRC).

    Two-row shapes use the Gamma difference. Deeper shapes are exact only
    where the plethysm bound is at most 1: then RCRC is the square of RC.
    """
    settings = settings or get_settings()
    _check_shape(lam, grid)
    if lam.depth > grid.max_depth:
        return 0
    if lam.depth <= 2:
        return trace_rcrc_two_row(grid.k, grid.t, lam.parts[1] if lam.depth == 2 else 0)
    bound = _rank_bound(lam, grid, settings)
    if bound == 0:
        return 0
    if bound == 1:
        return trace_rc_general(lam, grid, settings) ** 2
    raise UnsupportedParameterError(
        f"tr RCRC for {lam} on {grid.k}x{grid.t} needs plethysm multiplicity "
        f"{bound} > 1",
        "available: two-row shapes, and deeper shapes with multiplicity <= 1",
    )


def shapes_for(grid: GridSpec) -> list[Partition]:
    """Shapes of kt boxes with depth <= min(k, t), lex descending."""
    return partitions(grid.boxes, max_depth=grid.max_depth)
