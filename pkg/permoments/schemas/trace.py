"""
Trace table schemas.
"""
from enum import Enum
from fractions import Fraction
from math import factorial

from pydantic import ConfigDict, Field

from permoments.combinatorics.partitions import Partition
from permoments.schemas.base import BaseSchema, ExactValue, VersionedSchema


class TraceKind(str, Enum):
    RC = "RC"
    RCRC = "RCRC"


class TraceMethod(str, Enum):
    """Which formula family produced an entry."""

    CLOSED_FORM = "closed-form"
    POLYNOMIAL_TABLE = "polynomial-table"
    PSI_CONVERSION = "psi-conversion"
    BRUTE_FORCE = "brute-force"


class GridSpec(BaseSchema):
    """k x t grid of boxes: k rows (matrix size), t columns (half-moment order)."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    t: int = Field(..., ge=1)

    @property
    def boxes(self) -> int:
        return self.k * self.t

    @property
    def row_group_order(self) -> int:
        """|R| = (t!)^k."""
        return factorial(self.t) ** self.k

    @property
    def column_group_order(self) -> int:
        """|C| = (k!)^t."""
        return factorial(self.k) ** self.t

    @property
    def trivial_trace(self) -> int:
        return self.row_group_order * self.column_group_order

    @property
    def max_depth(self) -> int:
        return min(self.k, self.t)

    def swapped(self) -> "GridSpec":
        return GridSpec(k=self.t, t=self.k)


class TraceEntry(BaseSchema):
    shape: list[int]
    value: ExactValue
    method: TraceMethod

    @property
    def partition(self) -> Partition:
        return Partition(tuple(self.shape))


class TraceTable(VersionedSchema):
    """tr rho_lam(RC) or tr rho_lam(RCRC) for every shape of depth <= min(k, t)."""

    k: int
    t: int
    kind: TraceKind
    entries: list[TraceEntry]

    @property
    def grid(self) -> GridSpec:
        return GridSpec(k=self.k, t=self.t)

    def value(self, shape: Partition) -> Fraction:
        for entry in self.entries:
            if tuple(entry.shape) == shape.parts:
                return entry.value
        raise KeyError(f"{shape} not in table")

    def nonzero(self) -> "TraceTable":
        return self.model_copy(
            update={"entries": [e for e in self.entries if e.value != 0]}
        )
