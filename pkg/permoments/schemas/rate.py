"""
Large-deviation schemas.
"""
from pydantic import Field, model_validator

from permoments.schemas.base import BaseSchema


class ValueInterval(BaseSchema):
    """Closed interval certified to contain a value."""

    lower: float
    upper: float

    @model_validator(mode="after")
    def check_order(self) -> "ValueInterval":
        if self.lower > self.upper:
            raise ValueError(f"Empty interval [{self.lower}, {self.upper}]")
        return self

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


class RateFunctionPoint(BaseSchema):
    """I(y) on the differentiable branch, with the optimizer t* and omega."""

    y: float
    t_star: float = Field(..., ge=0)
    rate: float = Field(..., ge=0)
    omega: float


class RateBounds(BaseSchema):
    """Branch where only bounds on I(y) are known."""

    y: float
    bounds: ValueInterval
    branch: str


class LambdaPoint(BaseSchema):
    """lambda(t): exact value, or an interval on (2, 3)."""

    t: float
    value: float | None = None
    interval: ValueInterval | None = None
