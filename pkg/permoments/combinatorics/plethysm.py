"""
Plethysm coefficients Pl_lam^{k,t}: multiplicity of lam in Sym_k(Sym_t).

Provides:
- Two-row coefficients from rectangle partition counts
- The tabulated three-row family
- A monomial-expansion oracle for small kt (three variables)
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from permoments.combinatorics.partitions import (
    Partition,
    partitions,
    partitions_in_rectangle,
)
from permoments.combinatorics.symfunc import inverse_kostka, kostka_matrix
from permoments.config import Settings, get_settings
from permoments.exceptions import (
    ResourceBudgetError,
    ShapeMismatchError,
    UnsupportedParameterError,
    ValidityRangeError,
)

logger = logging.getLogger('permoments.plethysm')


def rectangle_count(rows: int, cols: int, a: int) -> int:
    """q: number of partitions of a inside a rows x cols box (0 for a < 0)."""
    if a < 0:
        return 0
    return len(partitions_in_rectangle(a, rows, cols))


def plethysm_two_row(k: int, t: int, a: int) -> int:
    """Pl_{(kt-a,a)}^{k,t} = q(t,k,a) - q(t,k,a-1)."""
    if not 0 <= 2 * a <= k * t:
        raise ValidityRangeError("0 <= a <= kt/2", f"k={k}, t={t}, a={a}")
    return rectangle_count(t, k, a) - rectangle_count(t, k, a - 1)


@dataclass(frozen=True)
class _SpecialCase:
    value: int
    min_t: int
    min_k: int


# Keyed by the shape below the first row.
_THREE_ROW_TABLE: dict[tuple[int, ...], _SpecialCase] = {
    (1, 1): _SpecialCase(value=0, min_t=1, min_k=1),
    (2, 1): _SpecialCase(value=0, min_t=3, min_k=1),
    (3, 1): _SpecialCase(value=0, min_t=4, min_k=1),
    (2, 2): _SpecialCase(value=1, min_t=3, min_k=3),
    (3, 2): _SpecialCase(value=1, min_t=3, min_k=5),
}


def plethysm_special(lam: Partition, k: int, t: int) -> int:
    """Tabulated Pl_lam^{k,t} for the three-row family and t=2 two-row shapes."""
    if lam.size != k * t:
        raise ShapeMismatchError(f"|{lam}| = {lam.size} but kt = {k * t}")
    if t == 2 and lam.depth <= 2:
        a = lam.parts[1] if lam.depth == 2 else 0
        return 1 if a % 2 == 0 else 0

    tail = lam.parts[1:]
    case = _THREE_ROW_TABLE.get(tail)
    if case is None:
        raise UnsupportedParameterError(
            f"Plethysm coefficient for {lam} is not tabulated",
            "available: (kt-2,1,1), (kt-3,2,1), (kt-4,3,1), (kt-4,2,2), "
            "(kt-5,3,2), and two-row shapes at t=2",
        )
    if t < case.min_t or k < case.min_k:
        raise ValidityRangeError(
            f"t >= {case.min_t} and k >= {case.min_k} for shape {lam}",
            f"got k={k}, t={t}",
        )
    return case.value


@lru_cache(maxsize=None)
def _monomial_coefficients(k: int, t: int) -> Counter[tuple[int, int, int]]:
    """Coefficients of h_k[h_t](x1, x2, x3), keyed by exponent vector."""
    monomials = [
        (i, j, t - i - j) for i in range(t, -1, -1) for j in range(t - i, -1, -1)
    ]
    coefficients: Counter[tuple[int, int, int]] = Counter()
    for chosen in combinations_with_replacement(monomials, k):
        exponent = (
            sum(m[0] for m in chosen),
            sum(m[1] for m in chosen),
            sum(m[2] for m in chosen),
        )
        coefficients[exponent] += 1
    return coefficients


@lru_cache(maxsize=None)
def _oracle_table(k: int, t: int) -> dict[Partition, int]:
    n = k * t
    coefficients = _monomial_coefficients(k, t)
    matrix = kostka_matrix(n, restrict=(3, n))
    inverse = inverse_kostka(matrix)
    monomial = {
        content: coefficients[content.padded(3)] for content in matrix.shapes
    }
    # m = E c with rows indexed by content, so c = E^{-1} m
    table = {
        shape: sum(
            value * monomial[content] for content, value in inverse.row_support(shape)
        )
        for shape in matrix.shapes
    }
    logger.debug(f"Oracle h_{k}[h_{t}]: {sum(1 for v in table.values() if v)} terms")
    return table


def plethysm_oracle(
    lam: Partition, k: int, t: int, settings: Settings | None = None
) -> int:
    """Coefficient of s_lam in h_k[h_t], by monomial expansion in three variables."""
    settings = settings or get_settings()
    if lam.size != k * t:
        raise ShapeMismatchError(f"|{lam}| = {lam.size} but kt = {k * t}")
    if k * t > settings.ORACLE_MAX_BOXES:
        raise ResourceBudgetError("ORACLE_MAX_BOXES", k * t, settings.ORACLE_MAX_BOXES)
    if lam.depth > 3:
        raise UnsupportedParameterError(
            f"Oracle covers depth <= 3, got {lam}", "use three-variable shapes"
        )
    return _oracle_table(k, t)[lam]


def plethysm_bound(
    lam: Partition, k: int, t: int, settings: Settings | None = None
) -> int:
    """min(Pl^{k,t}, Pl^{t,k}) from the oracle."""
    return min(
        plethysm_oracle(lam, k, t, settings), plethysm_oracle(lam, t, k, settings)
    )


def oracle_shapes(k: int, t: int) -> list[Partition]:
    """Shapes of depth <= 3 the oracle can report for (k, t)."""
    return partitions(k * t, max_depth=3)
