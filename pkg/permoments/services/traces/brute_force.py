"""
Direct enumeration over the row and column subgroups of S_{kt}.

Cells of the k x t grid are numbered i*t + j. Permutations are tuples,
composed right to left: (r c)(x) = r(c(x)).
"""
import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from permoments.combinatorics.partitions import Partition
from permoments.combinatorics.symfunc import restricted_inverse_kostka
from permoments.config import Settings, get_settings
from permoments.exceptions import ResourceBudgetError, ShapeMismatchError
from permoments.schemas.trace import GridSpec, TraceKind

logger = logging.getLogger('permoments.traces.brute_force')

Perm = tuple[int, ...]


@dataclass
class BruteForceResult:
    """Total #{r1 c1 r2 c2 = e} with an optional per-cycle-type split."""

    grid: GridSpec
    total: int
    profile: dict[Partition, Fraction] = field(default_factory=dict)


def _line_group(lines: list[list[int]], n: int) -> Iterator[Perm]:
    """All permutations of range(n) preserving each line setwise."""
    per_line = [list(permutations(line)) for line in lines]
    for choice in product(*per_line):
        image = list(range(n))
        for line, moved in zip(lines, choice):
            for src, dst in zip(line, moved):
                image[src] = dst
        yield tuple(image)


def row_group(grid: GridSpec) -> list[Perm]:
    rows = [[i * grid.t + j for j in range(grid.t)] for i in range(grid.k)]
    return list(_line_group(rows, grid.boxes))


def column_group(grid: GridSpec) -> list[Perm]:
    cols = [[i * grid.t + j for i in range(grid.k)] for j in range(grid.t)]
    return list(_line_group(cols, grid.boxes))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def in_rc(sigma: Perm, grid: GridSpec) -> bool:
    """sigma is in RC iff each column's images land in pairwise distinct rows."""
    t = grid.t
    for j in range(t):
        seen = set()
        for i in range(grid.k):
            row = sigma[i * t + j] // t
            if row in seen:
                return False
            seen.add(row)
    return True


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        lengths.append(length)
    return Partition(tuple(sorted(lengths, reverse=True)))


def _guard(value: int, limit: int, name: str, settings: Settings) -> None:
    if value > limit and not settings.FORCED:
        raise ResourceBudgetError(name, value, limit)


def trace_bruteforce(
    grid: GridSpec, distribution: bool = False, settings: Settings | None = None
) -> BruteForceResult:
    """
    E|Perm|^{2t} for a k x k Gaussian matrix, as #{r1 c1 r2 c2 = e}.

    The count route uses |RC cap CR| (products rc are distinct because
    R cap C = {e}). The distribution route tabulates n(pi) = #{r1 c r2 = pi}
    and returns sum n(pi)^2 / |R|^2, split by cycle type of pi.
    """
    settings = settings or get_settings()
    _guard(
        grid.boxes, settings.BRUTE_FORCE_MAX_BOXES, "BRUTE_FORCE_MAX_BOXES", settings
    )
    R = row_group(grid)
    C = column_group(grid)

    if not distribution:
        total = 0
        for r in R:
            for c in C:
                if in_rc(inverse(compose(r, c)), grid):
                    total += 1
        logger.info(f"Brute force {grid.k}x{grid.t}: {total}")
        return BruteForceResult(grid=grid, total=total)

    _guard(
        grid.boxes,
        settings.BRUTE_FORCE_DIST_MAX_BOXES,
        "BRUTE_FORCE_DIST_MAX_BOXES",
        settings,
    )
    n = grid.boxes
    rows = np.array(R, dtype=np.int64)
    powers = n ** np.arange(n, dtype=np.int64)
    rc = rows[:, np.array(C, dtype=np.int64)].reshape(-1, n)
    # pi = (r1 c) r2, encoded in base n
    codes = np.concatenate([rc[:, r] @ powers for r in rows])
    values, counts = np.unique(codes, return_counts=True)
    images = (values[:, None] // powers) % n
    logger.debug(f"{len(codes)} products, {len(values)} distinct permutations")

    scale = len(R) ** 2
    numerators: Counter[Partition] = Counter()
    for image, count in zip(images.tolist(), counts.tolist()):
        numerators[cycle_type(tuple(image))] += count * count
    profile = {
        shape: Fraction(value, scale) for shape, value in numerators.items()
    }
    total = Fraction(sum(numerators.values()), scale)
    if total.denominator != 1:
        raise ArithmeticError(f"Distribution route gave non-integral {total}")
    logger.info(f"Brute force distribution {grid.k}x{grid.t}: {total}")
    return BruteForceResult(grid=grid, total=int(total), profile=profile)


# ============================================================================
# PER-SHAPE TRACES
# ============================================================================

def _action_matrix(
    colourings: np.ndarray,
    powers: np.ndarray,
    group: list[Perm],
) -> np.ndarray:
    """sum_{g in group} Psi(g) on the colourings, (g.v)[g(x)] = v[x]."""
    codes = colourings @ powers
    order = np.argsort(codes)
    ordered = codes[order]
    size = len(colourings)
    columns = np.arange(size)
    matrix = np.zeros((size, size))
    for g in group:
        image = np.empty_like(colourings)
        image[:, list(g)] = colourings
        matrix[order[np.searchsorted(ordered, image @ powers)], columns] += 1
    return matrix


@lru_cache(maxsize=None)
def _module_traces(parts: tuple[int, ...], k: int, t: int) -> tuple[int, int]:
    """(tr Psi_mu(RC), tr Psi_mu(RCRC)) from the explicit permutation module."""
    grid = GridSpec(k=k, t=t)
    word = [symbol for symbol, part in enumerate(parts) for _ in range(part)]
    colourings = np.array(list(multiset_permutations(word)), dtype=np.int64)
    powers = len(parts) ** np.arange(grid.boxes, dtype=np.int64)
    rows = _action_matrix(colourings, powers, row_group(grid))
    cols = _action_matrix(colourings, powers, column_group(grid))
    # float products are exact: every entry is at most |R||C| < 2**53
    product_matrix = np.rint(rows @ cols).astype(np.int64)
    rc = int(np.trace(product_matrix))
    rcrc = int((product_matrix * product_matrix.T).astype(object).sum())
    logger.debug(f"Psi_{parts} on {k}x{t}: {len(colourings)} colourings")
    return rc, rcrc


def trace_shape_bruteforce(
    lam: Partition,
    grid: GridSpec,
    kind: TraceKind = TraceKind.RC,
    settings: Settings | None = None,
) -> int:
    """
    tr rho_lam(RC) or tr rho_lam(RCRC) from explicit permutation modules.

    Builds the action of R and C on all colourings of content mu and
    converts to irreducibles through the inverse Kostka matrix.
    """
    settings = settings or get_settings()
    if lam.size != grid.boxes:
        raise ShapeMismatchError(
            f"Shape {lam} has {lam.size} boxes but the grid has {grid.boxes}"
        )
    _guard(
        grid.boxes, settings.BRUTE_FORCE_MAX_BOXES, "BRUTE_FORCE_MAX_BOXES", settings
    )
    if lam.depth > grid.max_depth:
        return 0
    position = 0 if kind is TraceKind.RC else 1
    inverse_matrix = restricted_inverse_kostka(grid.boxes, lam.depth)
    value = sum(
        coefficient * _module_traces(mu.parts, grid.k, grid.t)[position]
        for mu, coefficient in inverse_matrix.row_support(lam)
    )
    logger.debug(f"Brute force tr {kind.value} {lam} on {grid.k}x{grid.t} = {value}")
    return value
