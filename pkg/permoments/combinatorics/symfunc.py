"""
Transition-matrix combinatorics for permoments.

Provides:
- Kostka numbers and shape-keyed Kostka matrices (and their inverses)
- Counts of 0-1 and nonnegative integer matrices with given margins
- Row/column types and counts of 0..l matrices with prescribed types
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

import sympy
from sympy.utilities.iterables import multiset_permutations

from permoments.combinatorics.partitions import (
    Partition,
    conjugate,
    dominates,
    partitions,
)
from permoments.config import Settings, get_settings
from permoments.exceptions import ResourceBudgetError, ShapeMismatchError

logger = logging.getLogger('permoments.symfunc')


def _require_same_size(mu: Partition, nu: Partition) -> None:
    if mu.size != nu.size:
        raise ShapeMismatchError(
            f"Partitions must have equal size: |{mu}|={mu.size}, |{nu}|={nu.size}"
        )


# ============================================================================
# KOSTKA NUMBERS
# ============================================================================

def _horizontal_strips(shape: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """Shapes nu with shape/nu a horizontal strip of `size` boxes."""
    depth = len(shape)

    def walk(i: int, remaining: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == depth:
            if remaining == 0:
                yield tuple(p for p in acc if p)
            return
        lower = shape[i + 1] if i + 1 < depth else 0
        for part in range(shape[i], lower - 1, -1):
            taken = shape[i] - part
            if taken > remaining:
                break
            yield from walk(i + 1, remaining - taken, acc + (part,))

    yield from walk(0, size, ())


@lru_cache(maxsize=None)
def _kostka(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not shape else 0
    if not dominates(Partition(shape), Partition(content)):
        return 0
    last = content[-1]
    return sum(
        _kostka(nu, content[:-1]) for nu in _horizontal_strips(shape, last)
    )


def kostka(lam: Partition, mu: Partition) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    _require_same_size(lam, mu)
    return _kostka(lam.parts, mu.parts)


@dataclass(frozen=True)
class KostkaMatrix:
    """
    Kostka numbers over an explicit, lex-descending list of shapes.

    Rows are indexed by content and columns by shape, so the matrix is
    lower unit-triangular: ``matrix[content, shape] == K_{shape, content}``.
    Positional storage is private; all access goes through shapes.
    """

    shapes: tuple[Partition, ...]
    _entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {shape: i for i, shape in enumerate(self.shapes)}
        )

    def __len__(self) -> int:
        return len(self.shapes)

    def __contains__(self, shape: object) -> bool:
        return shape in self._index  # type: ignore[attr-defined]

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        row, col = key
        index: dict[Partition, int] = self._index  # type: ignore[attr-defined]
        try:
            return self._entries[index[row]][index[col]]
        except KeyError as e:
            raise ShapeMismatchError(f"Shape {e.args[0]} not in this matrix") from e

    def kostka(self, shape: Partition, content: Partition) -> int:
        """K_{shape, content}."""
        return self[content, shape]

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self._entries]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows())

    def to_json(self) -> dict:
        return {
            "shapes": [shape.to_json() for shape in self.shapes],
            "entries": [[str(v) for v in row] for row in self._entries],
        }

    def row_support(self, row: Partition) -> Iterator[tuple[Partition, int]]:
        """Non-zero entries of one row as (column shape, value)."""
        index: dict[Partition, int] = self._index  # type: ignore[attr-defined]
        for shape, value in zip(self.shapes, self._entries[index[row]]):
            if value:
                yield shape, value


def kostka_matrix(n: int, restrict: tuple[int, int] | None = None) -> KostkaMatrix:
    """Kostka matrix over partitions of n, optionally inside a (rows, cols) box."""
    if restrict is None:
        shapes = tuple(partitions(n))
    else:
        rows, cols = restrict
        shapes = tuple(partitions(n, max_depth=rows, max_part=cols))
    entries = tuple(
        tuple(_kostka(shape.parts, content.parts) for shape in shapes)
        for content in shapes
    )
    return KostkaMatrix(shapes, entries)


def inverse_kostka(matrix: KostkaMatrix) -> KostkaMatrix:
    """Exact integer inverse, keyed by the same shapes."""
    if not len(matrix):
        return matrix
    inverse = matrix.to_sympy().inv()
    entries = tuple(
        tuple(int(inverse[i, j]) for j in range(len(matrix)))
        for i in range(len(matrix))
    )
    return KostkaMatrix(matrix.shapes, entries)


@lru_cache(maxsize=None)
def restricted_inverse_kostka(n: int, depth: int) -> KostkaMatrix:
    """Inverse of the Kostka matrix over partitions of n with at most `depth` rows."""
    return inverse_kostka(kostka_matrix(n, restrict=(depth, n)))


# ============================================================================
# MARGIN COUNTS
# ============================================================================

def _distribute(
    groups: Sequence[tuple[int, int]], total: int
) -> Iterator[tuple[int, ...]]:
    """Ways to take x_g <= count_g from each group with sum x_g == total."""
    if not groups:
        if total == 0:
            yield ()
        return
    (_, count), rest = groups[0], groups[1:]
    capacity = sum(c for _, c in rest)
    for x in range(min(count, total), -1, -1):
        if total - x > capacity:
            break
        for tail in _distribute(rest, total - x):
            yield (x,) + tail


@lru_cache(maxsize=None)
def _ib_margins(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    if not rows:
        return 1 if not cols else 0
    first, rest = rows[0], rows[1:]
    if first > len(cols):
        return 0
    groups = sorted(Counter(cols).items(), reverse=True)
    total = 0
    for choice in _distribute(groups, first):
        ways = prod(comb(count, x) for (_, count), x in zip(groups, choice))
        remaining: list[int] = []
        for (value, count), x in zip(groups, choice):
            remaining.extend([value - 1] * x)
            remaining.extend([value] * (count - x))
        key = tuple(sorted((v for v in remaining if v), reverse=True))
        total += ways * _ib_margins(rest, key)
    return total


def ib_count(mu: Partition, nu: Partition, method: str = "margins") -> int:
    """
    Number of 0-1 matrices with row sums mu and column sums nu.

    method="kostka" evaluates sum_lam K_{lam~ mu} K_{lam nu}; the default
    "margins" route fills rows one at a time over column-sum classes.
    """
    _require_same_size(mu, nu)
    if method == "kostka":
        return sum(
            _kostka(conjugate(lam).parts, mu.parts) * _kostka(lam.parts, nu.parts)
            for lam in partitions(mu.size)
        )
    if method != "margins":
        raise ValueError(f"Unknown ib_count method: {method}")
    return _ib_margins(mu.parts, nu.parts)


def im_count(mu: Partition, nu: Partition) -> int:
    """Number of nonnegative integer matrices with margins (mu, nu)."""
    _require_same_size(mu, nu)
    return sum(
        _kostka(lam.parts, mu.parts) * _kostka(lam.parts, nu.parts)
        for lam in partitions(mu.size)
    )


# ============================================================================
# ROW AND COLUMN TYPES
# ============================================================================

@dataclass(frozen=True)
class RowColType:
    """
    Per-line symbol counts of a matrix with entries in 0..l.

    ``vectors[i][n-1]`` counts symbol n in line i; each line holds
    ``bound`` cells, the rest being the zero symbol.
    """

    vectors: tuple[tuple[int, ...], ...]
    bound: int

    def __post_init__(self) -> None:
        vectors = tuple(tuple(int(x) for x in v) for v in self.vectors)
        widths = {len(v) for v in vectors}
        if len(widths) > 1:
            raise ValueError(f"Count vectors must share one length: {vectors}")
        for v in vectors:
            if any(x < 0 for x in v) or sum(v) > self.bound:
                raise ValueError(
                    f"Count vector {v} invalid for lines of {self.bound} cells"
                )
        object.__setattr__(self, "vectors", vectors)

    @property
    def lines(self) -> int:
        return len(self.vectors)

    @property
    def symbols(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    def canonical(self) -> RowColType:
        return RowColType(tuple(sorted(self.vectors, reverse=True)), self.bound)

    def totals(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.vectors)) if self.vectors else ()

    def stabilizer(self) -> int:
        return prod(factorial(m) for m in Counter(self.vectors).values())

    def orbit_size(self) -> int:
        return factorial(self.lines) // self.stabilizer()

    def weight(self) -> int:
        """prod over lines of the factorials of every symbol count, zeros included."""
        return prod(
            prod(factorial(x) for x in v) * factorial(self.bound - sum(v))
            for v in self.vectors
        )

    def word(self, line: int) -> list[int]:
        """Line contents as a sorted word over 0..l."""
        v = self.vectors[line]
        letters = [0] * (self.bound - sum(v))
        for symbol, count in enumerate(v, start=1):
            letters.extend([symbol] * count)
        return letters


def _check_area(rows: int, cols: int, limit: int) -> None:
    area = rows * cols
    if area > limit:
        raise ResourceBudgetError("TYPED_COUNT_MAX_AREA", area, limit)


def ib_count_typed(
    u: RowColType, w: RowColType, l: int, settings: Settings | None = None
) -> int:
    """Number of 0..l matrices with row type u and column type w."""
    settings = settings or get_settings()
    if u.bound != w.lines or w.bound != u.lines:
        raise ShapeMismatchError(
            f"Row type describes {u.lines}x{u.bound} but column type "
            f"{w.bound}x{w.lines}"
        )
    if u.symbols not in (0, l) or w.symbols not in (0, l):
        raise ShapeMismatchError(f"Types must use {l} symbols")
    _check_area(u.lines, u.bound, settings.TYPED_COUNT_MAX_AREA)
    if u.totals() != w.totals():
        return 0

    target = w.vectors
    states: dict[tuple[tuple[int, ...], ...], int] = {
        tuple((0,) * l for _ in range(w.lines)): 1
    }
    for i in range(u.lines):
        arrangements = list(multiset_permutations(u.word(i)))
        nxt: dict[tuple[tuple[int, ...], ...], int] = defaultdict(int)
        for state, count in states.items():
            for arrangement in arrangements:
                columns = [list(col) for col in state]
                fits = True
                for j, symbol in enumerate(arrangement):
                    if symbol:
                        columns[j][symbol - 1] += 1
                        if columns[j][symbol - 1] > target[j][symbol - 1]:
                            fits = False
                            break
                if fits:
                    nxt[tuple(tuple(col) for col in columns)] += count
        states = nxt
    return states.get(target, 0)


def column_type_counts(
    u: RowColType,
    settings: Settings | None = None,
    max_area: int | None = None,
) -> dict[RowColType, int]:
    """
    For a row type u, N(u, w) for every canonical column type w.

    An explicit max_area overrides TYPED_COUNT_MAX_AREA from the settings.

    Column states are kept sorted; a merged state W accumulates
    (c!/|Stab W|) N(u, W), which is divided back out at the end.
    """
    if max_area is None:
        max_area = (settings or get_settings()).TYPED_COUNT_MAX_AREA
    columns, l = u.bound, u.symbols
    _check_area(u.lines, columns, max_area)

    start = tuple((0,) * l for _ in range(columns))
    states: dict[tuple[tuple[int, ...], ...], int] = {start: 1}
    for i in range(u.lines):
        arrangements = list(multiset_permutations(u.word(i)))
        nxt: dict[tuple[tuple[int, ...], ...], int] = defaultdict(int)
        for state, count in states.items():
            for arrangement in arrangements:
                cols = [list(col) for col in state]
                for j, symbol in enumerate(arrangement):
                    if symbol:
                        cols[j][symbol - 1] += 1
                key = tuple(sorted((tuple(col) for col in cols), reverse=True))
                nxt[key] += count
        states = nxt
        logger.debug(f"Row {i + 1}/{u.lines}: {len(states)} column states")

    out: dict[RowColType, int] = {}
    for state, merged in states.items():
        w = RowColType(state, u.lines)
        value = Fraction(merged * w.stabilizer(), factorial(columns))
        if value.denominator != 1:
            raise ArithmeticError(f"Non-integral column count for {state}")
        out[w] = int(value)
    return out
