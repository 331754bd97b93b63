"""
Monte Carlo configuration and report schemas.
"""
from pydantic import Field, model_validator

from permoments.schemas.base import BaseSchema, VersionedSchema
from permoments.schemas.moment import Ensemble

_UNITARY = (Ensemble.UNITARY_MINOR, Ensemble.DET_UNITARY_MINOR)


class SampleConfig(BaseSchema):
    """Everything that determines a sample stream."""

    ensemble: Ensemble = Ensemble.GAUSSIAN
    k: int = Field(..., ge=1)
    d: int | None = Field(default=None, ge=1)
    samples: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    orders: list[int] = Field(default_factory=lambda: [1, 2])
    shard_size: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_dimensions(self) -> "SampleConfig":
        if self.ensemble in _UNITARY:
            if self.d is None:
                raise ValueError(f"Ensemble {self.ensemble.value} needs d")
            if self.k > self.d:
                raise ValueError(f"Minor size k={self.k} exceeds d={self.d}")
        if not self.orders or any(t < 1 for t in self.orders):
            raise ValueError(f"Moment orders must be positive: {self.orders}")
        return self


class MomentEstimate(BaseSchema):
    """Empirical E|X|^{2t} for one order t."""

    t: int
    mean: float
    stderr: float | None = None
    exact: str | None = None
    exact_float: float | None = None
    z_score: float | None = None
    gated: bool = False
    within_threshold: bool | None = None


class EstimateReport(VersionedSchema):
    config: SampleConfig
    estimates: list[MomentEstimate]
