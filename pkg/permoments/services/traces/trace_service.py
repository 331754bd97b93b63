"""
Trace table construction.

Builds TraceTables over every shape of depth <= min(k, t), dispatching each
shape to the formula family that covers it, and assembles the expansion
sums that turn traces into moments.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial

from permoments.combinatorics.partitions import Partition, hook_dim
from permoments.config import Settings, get_settings
from permoments.exceptions import (
    ResourceBudgetError,
    UnsupportedParameterError,
    ValidityRangeError,
)
from permoments.schemas.trace import (
    GridSpec,
    TraceEntry,
    TraceKind,
    TraceMethod,
    TraceTable,
)
from permoments.services.traces.brute_force import trace_shape_bruteforce
from permoments.services.traces.psi import (
    shapes_for,
    trace_rc_general,
    trace_rcrc_general,
)
from permoments.services.traces.two_row import (
    trace_rc_polynomial,
    trace_rc_t2_closed,
    trace_rc_t3_polynomial,
    trace_rcrc_polynomial,
    trace_rcrc_t2_closed,
    trace_rcrc_t3_polynomial,
)

logger = logging.getLogger('permoments.traces')


class TraceService:
    """Service for building and combining trace tables"""

    def __init__(self, settings: Settings | None = None, threads: int | None = None):
        self.settings = settings or get_settings()
        self.threads = threads or self.settings.THREADS

    def entry(
        self,
        shape: Partition,
        grid: GridSpec,
        kind: TraceKind,
        prefer: TraceMethod | None = None,
    ) -> TraceEntry:
        """Compute one trace, recording which formula family produced it.

        Shapes the general route refuses fall back to brute force on
        grids of at most BRUTE_FORCE_MAX_BOXES boxes.
        """
        if prefer is TraceMethod.BRUTE_FORCE:
            return self._brute_force(shape, grid, kind)
        a = shape.parts[1] if shape.depth == 2 else 0
        if shape.depth <= 2:
            if prefer is TraceMethod.POLYNOMIAL_TABLE:
                value = self._tabulated(grid, kind, a)
                if value is not None:
                    return self._entry(shape, value, TraceMethod.POLYNOMIAL_TABLE)
                logger.debug(f"No tabulated polynomial for {shape}, using Q/Gamma")
            if grid.t == 2:
                value = (
                    trace_rc_t2_closed(grid.k, a)
                    if kind is TraceKind.RC
                    else trace_rcrc_t2_closed(grid.k, a)
                )
                return self._entry(shape, value, TraceMethod.CLOSED_FORM)
        try:
            if kind is TraceKind.RC:
                value = trace_rc_general(shape, grid, self.settings)
            else:
                value = trace_rcrc_general(shape, grid, self.settings)
        except (ResourceBudgetError, UnsupportedParameterError) as exc:
            if (
                grid.boxes > self.settings.BRUTE_FORCE_MAX_BOXES
                and not self.settings.FORCED
            ):
                raise
            logger.info(f"{exc}; using brute force for {shape}")
            return self._brute_force(shape, grid, kind)
        method = (
            TraceMethod.CLOSED_FORM if shape.depth <= 2 else TraceMethod.PSI_CONVERSION
        )
        return self._entry(shape, value, method)

    def _brute_force(
        self, shape: Partition, grid: GridSpec, kind: TraceKind
    ) -> TraceEntry:
        value = trace_shape_bruteforce(shape, grid, kind, self.settings)
        return self._entry(shape, value, TraceMethod.BRUTE_FORCE)

    @staticmethod
    def _tabulated(grid: GridSpec, kind: TraceKind, a: int) -> int | None:
        """The general-(k,t) table, then the t = 3 table on k x 3 or 3 x t grids."""
        general, t3 = (
            (trace_rc_polynomial, trace_rc_t3_polynomial)
            if kind is TraceKind.RC
            else (trace_rcrc_polynomial, trace_rcrc_t3_polynomial)
        )
        try:
            return general(grid.k, grid.t, a)
        except ValidityRangeError:
            pass
        if 3 in (grid.k, grid.t):
            side = grid.k if grid.t == 3 else grid.t
            try:
                return t3(side, a)
            except ValidityRangeError:
                pass
        return None

    @staticmethod
    def _entry(shape: Partition, value: int, method: TraceMethod) -> TraceEntry:
        return TraceEntry(shape=shape.to_json(), value=value, method=method)

    def build_table(
        self,
        grid: GridSpec,
        kind: TraceKind = TraceKind.RC,
        prefer: TraceMethod | None = None,
    ) -> TraceTable:
        """All shapes of depth <= min(k, t), in lex-descending order."""
        shapes = shapes_for(grid)
        logger.info(
            f"Building {kind.value} table for {grid.k}x{grid.t}: "
            f"{len(shapes)} shapes, {self.threads} threads"
        )
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            entries = list(
                pool.map(lambda s: self.entry(s, grid, kind, prefer), shapes)
            )
        return TraceTable(k=grid.k, t=grid.t, kind=kind, entries=entries)


def completeness_sum(table: TraceTable) -> Fraction:
    """sum f^lam tr rho_lam(RC) / (kt)!, which equals 1."""
    return _weighted_sum(table, TraceKind.RC)


def gaussian_moment_from_traces(table: TraceTable) -> Fraction:
    """E|Perm|^{2t} = sum f^lam tr rho_lam(RCRC) / (kt)!."""
    return _weighted_sum(table, TraceKind.RCRC)


def _weighted_sum(table: TraceTable, kind: TraceKind) -> Fraction:
    if table.kind is not kind:
        raise ValueError(f"Expected a {kind.value} table, got {table.kind.value}")
    total = sum(
        (hook_dim(entry.partition) * entry.value for entry in table.entries),
        Fraction(0),
    )
    return total / factorial(table.grid.boxes)
