"""
Young-diagram arithmetic for permoments.

Provides:
- Partition value type (parts, size, depth, conjugate)
- Lexicographic and dominance orders
- Hook-length and Weyl dimension formulas
- Bounded partition enumeration (lexicographic descending)
"""
from __future__ import annotations

import enum
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from permoments.exceptions import ShapeMismatchError


@dataclass(frozen=True, slots=True)
class Partition:
    """Integer partition / Young diagram with non-increasing positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"Partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        """Build from parts, dropping trailing zeros."""
        return cls(tuple(p for p in parts if p != 0))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse '5,2,2' (or '[5, 2, 2]', or '' for the empty partition)."""
        cleaned = text.strip().strip("[]()").replace(" ", "")
        if not cleaned:
            return cls()
        return cls.of(*(int(p) for p in cleaned.split(",")))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def width(self) -> int:
        return self.parts[0] if self.parts else 0

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts padded with zeros to the given length."""
        if length < self.depth:
            raise ValueError(f"Cannot pad {self} to length {length}")
        return self.parts + (0,) * (length - self.depth)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Zero-based (row, column) coordinates of the boxes."""
        for i, part in enumerate(self.parts):
            for j in range(part):
                yield i, j

    def fits(self, rows: int, cols: int) -> bool:
        """True if the diagram fits in a rows x cols rectangle."""
        return self.depth <= rows and self.width <= cols

    def to_json(self) -> list[int]:
        return list(self.parts)


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _require_same_size(mu: Partition, nu: Partition) -> None:
    if mu.size != nu.size:
        raise ShapeMismatchError(
            f"Partitions must have equal size: |{mu}|={mu.size}, |{nu}|={nu.size}"
        )


def conjugate(lam: Partition) -> Partition:
    """Transpose Young diagram: mu_j = #{i : lam_i >= j}."""
    return Partition(
        tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.width + 1))
    )


def lex_compare(mu: Partition, nu: Partition) -> Ordering:
    """Compare by the sign of the first non-zero mu_i - nu_i."""
    _require_same_size(mu, nu)
    length = max(mu.depth, nu.depth)
    for a, b in zip(mu.padded(length), nu.padded(length)):
        if a != b:
            return Ordering.GREATER if a > b else Ordering.LESS
    return Ordering.EQUAL


def dominates(mu: Partition, nu: Partition) -> bool:
    """True if mu dominates nu (all partial sums of mu are >= those of nu)."""
    _require_same_size(mu, nu)
    length = max(mu.depth, nu.depth)
    total_mu = total_nu = 0
    for a, b in zip(mu.padded(length), nu.padded(length)):
        total_mu += a
        total_nu += b
        if total_mu < total_nu:
            return False
    return True


def hooks(lam: Partition) -> list[int]:
    """Hook lengths of every box, row by row."""
    conj = conjugate(lam)
    return [
        (lam[i] - j - 1) + (conj[j] - i - 1) + 1
        for i, j in lam.cells()
    ]


@lru_cache(maxsize=None)
def _hook_dim(parts: tuple[int, ...]) -> int:
    lam = Partition(parts)
    return factorial(lam.size) // prod(hooks(lam))


def hook_dim(lam: Partition) -> int:
    """Number of standard Young tableaux f^lam = n!/prod(hooks)."""
    return _hook_dim(lam.parts)


def hook_dim_alternating(lam: Partition) -> int:
    """f^lam via n! prod_{i<j}(l_i - l_j) / prod_i l_i!, with l_i = lam_i + r - i."""
    r = lam.depth
    shifted = [lam[i] + r - i - 1 for i in range(r)]
    numerator = prod(
        shifted[i] - shifted[j] for i in range(r) for j in range(i + 1, r)
    )
    value = Fraction(
        factorial(lam.size) * numerator, prod(factorial(x) for x in shifted)
    )
    return int(value)


def weyl_dim(lam: Partition, d: int) -> int:
    """Dimension of the U(d) irrep lam; 0 when depth(lam) > d."""
    if d < 1:
        raise ValueError(f"Weyl dimension needs d >= 1, got {d}")
    if lam.depth > d:
        return 0
    numerator = prod(d + j - i for i, j in lam.cells())
    return numerator // prod(hooks(lam))


def partitions(
    n: int, max_depth: int | None = None, max_part: int | None = None
) -> list[Partition]:
    """All partitions of n in lexicographic descending order, optionally bounded."""
    if n < 0:
        return []
    depth = n if max_depth is None else max_depth
    part = n if max_part is None else max_part
    return [Partition(p) for p in _partitions(n, depth, part)]


@lru_cache(maxsize=4096)
def _partitions(n: int, max_depth: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_depth == 0 or max_part == 0:
        return ()
    out: list[tuple[int, ...]] = []
    for first in range(min(n, max_part), 0, -1):
        if first * max_depth < n:
            break
        for rest in _partitions(n - first, max_depth - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_in_rectangle(a: int, rows: int, cols: int) -> list[Partition]:
    """Partitions of a fitting in a rows x cols rectangle, lex descending."""
    return partitions(a, max_depth=rows, max_part=cols)


def content_count(lam: Partition, value: int, rows: int) -> int:
    """#_lam(value) for lam padded with zeros to `rows` entries."""
    return lam.padded(rows).count(value)


def as_partition(parts: Sequence[int] | Partition) -> Partition:
    """Accept a Partition or any sequence of parts."""
    if isinstance(parts, Partition):
        return parts
    return Partition.of(*sorted(parts, reverse=True))
