"""Pydantic schemas for reports and tables"""

from .base import (
    BaseSchema,
    ExactValue,
    VersionedSchema,
    format_exact,
    format_significant,
    format_truncated,
    to_fraction,
)
from .estimate import EstimateReport, MomentEstimate, SampleConfig
from .moment import BoundValue, Ensemble, MomentReport
from .rate import LambdaPoint, RateBounds, RateFunctionPoint, ValueInterval
from .trace import GridSpec, TraceEntry, TraceKind, TraceMethod, TraceTable

__all__ = [
    'BaseSchema',
    'BoundValue',
    'Ensemble',
    'EstimateReport',
    'ExactValue',
    'GridSpec',
    'LambdaPoint',
    'MomentEstimate',
    'MomentReport',
    'RateBounds',
    'RateFunctionPoint',
    'SampleConfig',
    'TraceEntry',
    'TraceKind',
    'TraceMethod',
    'TraceTable',
    'ValueInterval',
    'VersionedSchema',
    'format_exact',
    'format_significant',
    'format_truncated',
    'to_fraction',
]
