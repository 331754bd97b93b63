from .rate_function import (
    BRANCH_BOUNDARY_Y,
    LOG_FOUR_THIRDS,
    SMALL_Y_LIMIT,
    det_rate_function,
    det_scgf,
    emit_lambda_curve,
    emit_omega_curve,
    lambda_derivative,
    lambda_exact,
    lambda_scgf,
    legendre_transform,
    omega_asymptotic,
    rate_function,
    solve_tstar,
)

__all__ = [
    'BRANCH_BOUNDARY_Y',
    'LOG_FOUR_THIRDS',
    'SMALL_Y_LIMIT',
    'det_rate_function',
    'det_scgf',
    'emit_lambda_curve',
    'emit_omega_curve',
    'lambda_derivative',
    'lambda_exact',
    'lambda_scgf',
    'legendre_transform',
    'omega_asymptotic',
    'rate_function',
    'solve_tstar',
]
