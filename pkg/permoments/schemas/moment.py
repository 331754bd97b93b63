"""
Moment report schemas.
"""
from enum import Enum

from pydantic import computed_field

from permoments.schemas.base import (
    BaseSchema,
    ExactValue,
    VersionedSchema,
    format_significant,
)


class Ensemble(str, Enum):
    GAUSSIAN = "gaussian"
    UNITARY_MINOR = "unitary-minor"
    DET_GAUSSIAN = "determinant-gaussian"
    DET_UNITARY_MINOR = "determinant-unitary-minor"


class BoundValue(BaseSchema):
    """A named bound on a moment."""

    name: str
    value: ExactValue

    @computed_field  # type: ignore[prop-decorator]
    @property
    def approx(self) -> str:
        return format_significant(self.value)


class MomentReport(VersionedSchema):
    """Computed moment with normalization ratio, bounds and provenance."""

    ensemble: Ensemble
    k: int
    t: int
    d: int | None = None
    value: ExactValue
    ratio_exact: ExactValue | None = None
    bounds: list[BoundValue] = []
    method: str

    @computed_field  # type: ignore[prop-decorator]
    @property
    def ratio(self) -> str | None:
        if self.ratio_exact is None:
            return None
        return format_significant(self.ratio_exact)
