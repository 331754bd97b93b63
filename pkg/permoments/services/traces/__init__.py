from .brute_force import BruteForceResult, trace_bruteforce, trace_shape_bruteforce
from .psi import trace_psi, trace_rc_general, trace_rcrc_general
from .trace_service import TraceService, completeness_sum, gaussian_moment_from_traces
from .two_row import (
    RCRC_LEADING_TERMS,
    gamma_sum,
    gamma_sum_kostka_form,
    omega,
    q_sum,
    rc_polynomial_value,
    rcrc_polynomial_value,
    t3_normalizer,
    trace_rc_polynomial,
    trace_rc_t2_closed,
    trace_rc_t3_polynomial,
    trace_rc_two_row,
    trace_rcrc_polynomial,
    trace_rcrc_t2_closed,
    trace_rcrc_t3_polynomial,
    trace_rcrc_two_row,
)

__all__ = [
    'BruteForceResult',
    'RCRC_LEADING_TERMS',
    'TraceService',
    'completeness_sum',
    'gamma_sum',
    'gamma_sum_kostka_form',
    'gaussian_moment_from_traces',
    'omega',
    'q_sum',
    'rc_polynomial_value',
    'rcrc_polynomial_value',
    't3_normalizer',
    'trace_bruteforce',
    'trace_psi',
    'trace_rc_general',
    'trace_rc_polynomial',
    'trace_rc_t2_closed',
    'trace_rc_t3_polynomial',
    'trace_rc_two_row',
    'trace_rcrc_general',
    'trace_rcrc_polynomial',
    'trace_rcrc_t2_closed',
    'trace_rcrc_t3_polynomial',
    'trace_rcrc_two_row',
    'trace_shape_bruteforce',
]
