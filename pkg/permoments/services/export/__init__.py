from .export_service import (
    det_rate_csv,
    estimate_csv,
    lambda_csv,
    moment_human,
    moments_csv,
    omega_csv,
    rate_bounds_csv,
    render_csv,
    render_json,
    trace_csv,
)
from .reference_tables import (
    factorization,
    k3_normalizer,
    moment_rows,
    moment_table_csv,
    normalized_k3_csv,
    trace_factor_csv,
)

__all__ = [
    'det_rate_csv',
    'estimate_csv',
    'factorization',
    'k3_normalizer',
    'lambda_csv',
    'moment_human',
    'moment_rows',
    'moment_table_csv',
    'moments_csv',
    'normalized_k3_csv',
    'omega_csv',
    'rate_bounds_csv',
    'render_csv',
    'render_json',
    'trace_csv',
    'trace_factor_csv',
]
