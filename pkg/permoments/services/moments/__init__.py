from .determinant import det_moment_gaussian, det_moment_unitary_minor
from .gaussian import (
    LOWER_BOUND_SELECTORS,
    deep_truncation_limit,
    gaussian_moment_exact,
    gaussian_moment_lower_bound,
    gaussian_moment_series,
    gaussian_moment_value,
    normalization_base,
    three_row_trace,
)
from .magic_squares import (
    BirkhoffCounter,
    MagicSquare,
    birkhoff_counter,
    count_birkhoff,
    distribution_totals,
    enumerate_magic_squares,
    magic_square_divergence,
    magic_square_moment,
)
from .unitary import (
    hunter_jones_conjecture,
    hunter_jones_relative_error,
    unitary_minor_lower_bound,
    unitary_minor_moment,
    unitary_minor_value,
)

__all__ = [
    'BirkhoffCounter',
    'LOWER_BOUND_SELECTORS',
    'MagicSquare',
    'birkhoff_counter',
    'count_birkhoff',
    'deep_truncation_limit',
    'det_moment_gaussian',
    'det_moment_unitary_minor',
    'distribution_totals',
    'enumerate_magic_squares',
    'gaussian_moment_exact',
    'gaussian_moment_lower_bound',
    'gaussian_moment_series',
    'gaussian_moment_value',
    'hunter_jones_conjecture',
    'hunter_jones_relative_error',
    'magic_square_divergence',
    'magic_square_moment',
    'normalization_base',
    'three_row_trace',
    'unitary_minor_lower_bound',
    'unitary_minor_moment',
    'unitary_minor_value',
]
