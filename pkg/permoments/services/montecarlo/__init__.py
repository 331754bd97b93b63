from .estimator import RunningMoment, estimate_moments, exact_reference
from .permanent import naive_permanent, permanent, permanents
from .sampling import (
    haar_unitary,
    haar_unitary_batch,
    sample_gaussian,
    sample_gaussian_batch,
    sample_haar_minor,
    sample_haar_minor_batch,
)

__all__ = [
    'RunningMoment',
    'estimate_moments',
    'exact_reference',
    'haar_unitary',
    'haar_unitary_batch',
    'naive_permanent',
    'permanent',
    'permanents',
    'sample_gaussian',
    'sample_gaussian_batch',
    'sample_haar_minor',
    'sample_haar_minor_batch',
]
