"""
Base schemas and exact-value serialization.
"""
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

SCHEMA_VERSION = 1


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not exact values")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"Cannot read {value!r} as an exact value")


def format_exact(value: Fraction | int) -> str:
    """Decimal string for integers, 'p/q' for proper rationals."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_decimal(value: Fraction | int | float) -> Decimal:
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        return Decimal(value.numerator) / Decimal(value.denominator)


def format_significant(value: Fraction | int | float, digits: int = 15) -> str:
    """Fixed-point rendering with `digits` significant digits, trailing zeros kept."""
    d = _to_decimal(value)
    if d == 0:
        return "0." + "0" * (digits - 1)
    quantum = Decimal(1).scaleb(d.adjusted() - digits + 1)
    with localcontext() as ctx:
        ctx.prec = 80
        return str(d.quantize(quantum))


def format_truncated(value: Fraction | int | float, decimals: int = 3) -> str:
    """Fixed-point rendering cut (not rounded) after `decimals` places."""
    d = _to_decimal(value)
    with localcontext() as ctx:
        ctx.prec = 80
        return str(d.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_DOWN))


ExactValue = Annotated[
    Fraction,
    BeforeValidator(to_fraction),
    PlainSerializer(format_exact, return_type=str),
]


class BaseSchema(BaseModel):
    """Base schema with common configuration."""

    model_config = ConfigDict(from_attributes=True, arbitrary_types_allowed=True)


class VersionedSchema(BaseSchema):
    """Top-level report carrying the output schema version."""

    schema_version: int = SCHEMA_VERSION
