"""
Weak magic squares and their Birkhoff decompositions.

Provides:
- Row-major enumeration of k x k squares with line sum t
- |Q(A)|, the number of ordered decompositions into t permutation matrices
- BirkhoffCounter: all levels t = 0..T in one pass over canonical orbit
  representatives under independent row and column permutations
- The p1 / p2 distributions whose Renyi-2 divergence gives the moment ratio
"""
import logging
import threading
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod

from permoments.config import Settings, get_settings
from permoments.exceptions import ResourceBudgetError

logger = logging.getLogger('permoments.moments.magic_squares')

Square = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MagicSquare:
    """k x k nonnegative integer matrix with every row and column summing to t."""

    entries: Square

    def __post_init__(self) -> None:
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise ValueError("Magic square must be square")
        if any(x < 0 for row in self.entries for x in row):
            raise ValueError("Magic square entries must be nonnegative")
        sums = {sum(row) for row in self.entries}
        sums |= {sum(col) for col in zip(*self.entries)}
        if len(sums) > 1:
            raise ValueError(f"Unequal line sums {sorted(sums)}")

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def t(self) -> int:
        return sum(self.entries[0]) if self.entries else 0

    def factorial_weight(self) -> int:
        """prod_ij A_ij!"""
        return prod(factorial(x) for row in self.entries for x in row)

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def enumerate_magic_squares(k: int, t: int) -> Iterator[MagicSquare]:
    """Every square of A+(t, k) once, in row-major lexicographic order."""
    if k < 1 or t < 0:
        raise ValueError(f"Need k >= 1 and t >= 0, got k={k}, t={t}")

    def rows_with_sum(caps: tuple[int, ...], total: int) -> Iterator[tuple[int, ...]]:
        if len(caps) == 1:
            if total <= caps[0]:
                yield (total,)
            return
        room = sum(caps[1:])
        for x in range(max(0, total - room), min(caps[0], total) + 1):
            for rest in rows_with_sum(caps[1:], total - x):
                yield (x,) + rest

    def walk(prefix: Square, col_room: tuple[int, ...]) -> Iterator[Square]:
        if len(prefix) == k - 1:
            yield prefix + (col_room,)
            return
        for row in rows_with_sum(col_room, t):
            yield from walk(
                prefix + (row,), tuple(c - x for c, x in zip(col_room, row))
            )

    if k == 1:
        yield MagicSquare(((t,),))
        return
    for square in walk((), (t,) * k):
        yield MagicSquare(square)


@lru_cache(maxsize=None)
def _permutation_matrices(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(k)))


@lru_cache(maxsize=None)
def _count_decompositions(entries: Square) -> int:
    if not any(any(row) for row in entries):
        return 1
    total = 0
    for pi in _permutation_matrices(len(entries)):
        if all(entries[i][pi[i]] > 0 for i in range(len(entries))):
            residual = tuple(
                tuple(x - (j == pi[i]) for j, x in enumerate(row))
                for i, row in enumerate(entries)
            )
            total += _count_decompositions(residual)
    return total


def count_birkhoff(square: MagicSquare) -> int:
    """|Q(A)| by f(A) = sum over permutation matrices P <= A of f(A - P)."""
    return _count_decompositions(square.entries)


def magic_square_moment(k: int, t: int) -> int:
    """sum_A |Q(A)|^2 prod A_ij!, summed over every square directly."""
    return sum(
        count_birkhoff(A) ** 2 * A.factorial_weight()
        for A in enumerate_magic_squares(k, t)
    )


# ============================================================================
# ORBIT COUNTER
# ============================================================================


def _canonical(
    square: Square, row_perms: tuple[tuple[int, ...], ...]
) -> tuple[Square, int]:
    """
    Orbit representative under row and column permutations, and its stabilizer.

    The representative is the largest, over row orders, of the matrix whose
    columns are sorted descending. The stabilizer is the number of row orders
    reaching it times the column multiplicities' factorials.
    """
    k = len(square)
    best: Square | None = None
    hits = 0
    for perm in row_perms:
        cols = sorted(
            (tuple(square[perm[i]][j] for i in range(k)) for j in range(k)),
            reverse=True,
        )
        form = tuple(cols)
        if best is None or form > best:
            best, hits = form, 1
        elif form == best:
            hits += 1
    assert best is not None
    rep = tuple(tuple(best[j][i] for j in range(k)) for i in range(k))
    multiplicities = prod(factorial(best.count(col)) for col in set(best))
    return rep, hits * multiplicities


@dataclass
class LevelSummary:
    """Orbit statistics of one level t."""

    t: int
    orbits: int
    moment: int
    divergence: Fraction


class BirkhoffCounter:
    """
    Level-by-level |Q| counts over orbit representatives of A+(t, k).

    Level t+1 is reached by adding each permutation matrix to each
    representative of level t. Counts are kept per representative; the orbit
    size is |G| / |Stab| with G = S_k x S_k.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"Need k >= 1, got {k}")
        self.k = k
        self._row_perms = _permutation_matrices(k)
        self._group_order = factorial(k) ** 2
        zero = tuple((0,) * k for _ in range(k))
        # representative -> (|Q|, orbit size)
        self._levels: list[dict[Square, tuple[int, int]]] = [{zero: (1, 1)}]
        self._moments: list[int] = [1]
        self._lock = threading.Lock()

    @property
    def computed(self) -> int:
        """Highest level computed so far."""
        return len(self._levels) - 1

    def _advance(self) -> None:
        current = self._levels[-1]
        acc: dict[Square, int] = {}
        stabs: dict[Square, int] = {}
        canon_cache: dict[Square, tuple[Square, int]] = {}
        for square, (count, orbit) in current.items():
            weight = count * orbit
            for pi in self._row_perms:
                moved = tuple(
                    tuple(x + (j == pi[i]) for j, x in enumerate(row))
                    for i, row in enumerate(square)
                )
                found = canon_cache.get(moved)
                if found is None:
                    found = _canonical(moved, self._row_perms)
                    canon_cache[moved] = found
                rep, stab = found
                acc[rep] = acc.get(rep, 0) + weight
                stabs[rep] = stab

        level: dict[Square, tuple[int, int]] = {}
        moment = 0
        for rep, total in acc.items():
            stab = stabs[rep]
            count, rem = divmod(total * stab, self._group_order)
            if rem:
                raise ArithmeticError(f"Non-integral orbit count at {rep}")
            orbit = self._group_order // stab
            level[rep] = (count, orbit)
            weight = prod(factorial(x) for row in rep for x in row)
            moment += orbit * count * count * weight
        self._levels.append(level)
        self._moments.append(moment)
        logger.debug(
            f"k={self.k} level {len(self._levels) - 1}: {len(level)} orbits"
        )

    def extend(self, t: int) -> None:
        with self._lock:
            while self.computed < t:
                self._advance()

    def moment(self, t: int) -> int:
        """E|Perm|^{2t} for a k x k complex Gaussian matrix."""
        if t < 0:
            raise ValueError(f"Need t >= 0, got {t}")
        self.extend(t)
        return self._moments[t]

    def moments(self, t_max: int) -> list[int]:
        self.extend(t_max)
        return self._moments[: t_max + 1]

    def counts(self, t: int) -> dict[Square, tuple[int, int]]:
        """Representative -> (|Q|, orbit size) at level t."""
        self.extend(t)
        return dict(self._levels[t])

    def summary(self, t: int) -> LevelSummary:
        return LevelSummary(
            t=t,
            orbits=len(self.counts(t)),
            moment=self.moment(t),
            divergence=magic_square_divergence(self.k, t, counter=self),
        )


def check_square_budget(k: int, t: int, settings: Settings) -> None:
    """Squares are k x k; the level count t is bounded per side."""
    budget = settings.gaussian_budget(k)
    if budget is not None and t > budget:
        guard = f"GAUSSIAN_MAX_T_K{k}" if k <= 5 else "GAUSSIAN_MAX_SIDE"
        raise ResourceBudgetError(guard, t, budget)


_counters: dict[int, BirkhoffCounter] = {}
_counters_lock = threading.Lock()


def birkhoff_counter(k: int) -> BirkhoffCounter:
    """Process-wide counter for side k."""
    with _counters_lock:
        if k not in _counters:
            _counters[k] = BirkhoffCounter(k)
        return _counters[k]


# ============================================================================
# DIAGNOSTIC DISTRIBUTIONS
# ============================================================================


def p1_weight(count: int, k: int, t: int) -> Fraction:
    """p1(A) = |Q(A)| / k!^t."""
    return Fraction(count, factorial(k) ** t)


def p2_weight(square: Square, t: int) -> Fraction:
    """p2(A) = t!^{2k} / ((kt)! prod A_ij!)."""
    k = len(square)
    weight = prod(factorial(x) for row in square for x in row)
    return Fraction(factorial(t) ** (2 * k), factorial(k * t) * weight)


def distribution_totals(
    k: int, t: int, counter: BirkhoffCounter | None = None
) -> tuple[Fraction, Fraction]:
    """(sum p1, sum p2); both are exactly 1."""
    counter = counter or birkhoff_counter(k)
    p1 = Fraction(0)
    p2 = Fraction(0)
    for rep, (count, orbit) in counter.counts(t).items():
        p1 += orbit * p1_weight(count, k, t)
        p2 += orbit * p2_weight(rep, t)
    return p1, p2


def magic_square_divergence(
    k: int,
    t: int,
    counter: BirkhoffCounter | None = None,
    settings: Settings | None = None,
) -> Fraction:
    """sum_A p1(A)^2 / p2(A), which equals the normalized moment ratio."""
    settings = settings or get_settings()
    if counter is None:
        check_square_budget(k, t, settings)
        counter = birkhoff_counter(k)
    total = Fraction(0)
    for rep, (count, orbit) in counter.counts(t).items():
        p1 = p1_weight(count, k, t)
        total += orbit * p1 * p1 / p2_weight(rep, t)
    return total
