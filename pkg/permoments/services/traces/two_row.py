"""
Two-row traces tr rho_{(kt-a,a)}(RC) and tr rho_{(kt-a,a)}(RCRC).

Provides:
- Omega weights and the Q / Gamma rectangle sums
- Q- and Gamma-difference traces
- The t=2 closed forms, the tabulated general-(k,t) family and the t=3 family
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm, prod

import sympy

from permoments.combinatorics.partitions import (
    Partition,
    conjugate,
    partitions,
    partitions_in_rectangle,
)
from permoments.combinatorics.symfunc import ib_count, kostka_matrix
from permoments.exceptions import ValidityRangeError

logger = logging.getLogger('permoments.traces')


def omega(mu: Partition, r: int, s: int) -> int:
    """r! prod_i mu_i!(s - mu_i)! / prod_j #_mu(j)!, mu padded with zeros to r rows."""
    if not mu.fits(r, s):
        return 0
    parts = mu.padded(r)
    numerator = factorial(r) * prod(factorial(p) * factorial(s - p) for p in parts)
    denominator = prod(factorial(parts.count(j)) for j in range(s + 1))
    return numerator // denominator


def _check_a(k: int, t: int, a: int) -> None:
    if k < 1 or t < 1:
        raise ValidityRangeError("k >= 1 and t >= 1", f"got k={k}, t={t}")
    if not 0 <= 2 * a <= k * t:
        raise ValidityRangeError("0 <= a <= kt/2", f"got k={k}, t={t}, a={a}")


@lru_cache(maxsize=None)
def _blocks(
    k: int, t: int, a: int
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Omega over Rect(k rows, t cols), Omega-hat over Rect(t rows, k cols), and IB.

    Cached, so everything returned is immutable.
    """
    rows = partitions_in_rectangle(a, k, t)
    cols = partitions_in_rectangle(a, t, k)
    omega_rows = tuple(omega(mu, k, t) for mu in rows)
    omega_cols = tuple(omega(nu, t, k) for nu in cols)
    ib = tuple(tuple(ib_count(mu, nu) for nu in cols) for mu in rows)
    return omega_rows, omega_cols, ib


@lru_cache(maxsize=None)
def q_sum(k: int, t: int, a: int) -> int:
    """Q(k,t,a) = sum_{mu,nu} Omega_mu Omega-hat_nu IB_{mu nu}^2; 0 for a < 0."""
    if a < 0:
        return 0
    omega_rows, omega_cols, ib = _blocks(k, t, a)
    return sum(
        om * oc * ib[i][j] ** 2
        for i, om in enumerate(omega_rows)
        for j, oc in enumerate(omega_cols)
    )


@lru_cache(maxsize=None)
def gamma_sum(k: int, t: int, a: int) -> int:
    """Gamma(k,t,a) = tr[(Omega IB Omega-hat IB^T)^2]; 0 for a < 0."""
    if a < 0:
        return 0
    omega_rows, omega_cols, ib = _blocks(k, t, a)
    if not omega_rows or not omega_cols:
        return 0
    block = (
        sympy.diag(*omega_rows)
        * sympy.Matrix(ib)
        * sympy.diag(*omega_cols)
        * sympy.Matrix(ib).T
    )
    return int((block * block).trace())


def gamma_sum_kostka_form(k: int, t: int, a: int) -> int:
    """Gamma from the Kostka product tr[(K Omega K^T D K Omega-hat K^T D)^2]."""
    shapes = partitions(a)
    if not shapes:
        return 0
    kmat = kostka_matrix(a)
    # K_{shape, content} with rows = shape
    K = kmat.to_sympy().T
    index = {shape: i for i, shape in enumerate(shapes)}
    size = len(shapes)
    D = sympy.zeros(size, size)
    for shape in shapes:
        D[index[shape], index[conjugate(shape)]] = 1
    omega_k = sympy.diag(*[omega(mu, k, t) for mu in shapes])
    omega_t = sympy.diag(*[omega(mu, t, k) for mu in shapes])
    block = K * omega_k * K.T * D * K * omega_t * K.T * D
    return int((block * block).trace())


def trace_rc_two_row(k: int, t: int, a: int) -> int:
    """tr rho_{(kt-a,a)}(RC) = Q(k,t,a) - Q(k,t,a-1)."""
    _check_a(k, t, a)
    value = q_sum(k, t, a) - q_sum(k, t, a - 1)
    logger.debug(f"tr RC ({k * t - a},{a}) on {k}x{t} = {value}")
    return value


def trace_rcrc_two_row(k: int, t: int, a: int) -> int:
    """tr rho_{(kt-a,a)}(RCRC) = Gamma(k,t,a) - Gamma(k,t,a-1)."""
    _check_a(k, t, a)
    value = gamma_sum(k, t, a) - gamma_sum(k, t, a - 1)
    logger.debug(f"tr RCRC ({k * t - a},{a}) on {k}x{t} = {value}")
    return value


def trace_rc_t2_closed(k: int, a: int) -> int:
    """t = 2: 2^k (k!)^2 [a even] 2^{-a} C(a, a/2) / C(k, a/2)."""
    if not 0 <= a <= k:
        raise ValidityRangeError("0 <= a <= k", f"got k={k}, a={a}")
    if a % 2:
        return 0
    value = Fraction(2**k * factorial(k) ** 2 * comb(a, a // 2), 2**a * comb(k, a // 2))
    return int(value)


def trace_rcrc_t2_closed(k: int, a: int) -> int:
    """t = 2: every plethysm coefficient is 0 or 1, so RCRC is the square of RC."""
    return trace_rc_t2_closed(k, a) ** 2


# ============================================================================
# TABULATED GENERAL-(k,t) FAMILY (valid for k, t >= a)
# ============================================================================

_RC_POLYNOMIALS = {
    0: lambda k, t: 1,
    1: lambda k, t: 0,
    2: lambda k, t: 1,
    3: lambda k, t: 1,
    4: lambda k, t: (
        k**2 * t**2 + k**2 * t + k * t**2 + 25 * k * t - 30 * k - 30 * t + 36
    ),
    5: lambda k, t: (
        k**2 * t**2 + 5 * k**2 * t + 5 * k * t**2 + 49 * k * t - 84 * k - 84 * t + 144
    ),
}

_RCRC_POLYNOMIALS = {
    0: lambda k, t: 1,
    1: lambda k, t: 0,
    2: lambda k, t: 1,
    3: lambda k, t: 1,
}

# Top three total degrees of the RCRC polynomial, {(deg_k, deg_t): coefficient}.
RCRC_LEADING_TERMS = {
    4: {(4, 4): 1, (4, 3): 2, (3, 4): 2, (4, 2): 1, (3, 3): -20, (2, 4): 1},
    5: {(4, 4): 1, (4, 3): 10, (3, 4): 10, (4, 2): 25, (3, 3): -140, (2, 4): 25},
}


def _polynomial_prefactor(k: int, t: int, a: int) -> Fraction:
    base = Fraction(factorial(k) ** t * factorial(t) ** k)
    sign_factor = 2 ** (1 - (-1) ** a)
    scale = Fraction(1)
    for i in range(a):
        exponent = 1 - a // (i + 1)
        scale *= Fraction((k - i) * (t - i)) ** exponent
    return base * sign_factor * scale


def _check_polynomial(k: int, t: int, a: int, table: dict) -> None:
    if a not in table:
        raise ValidityRangeError(
            f"a in {sorted(table)} for the tabulated family", f"got a={a}"
        )
    if k < a or t < a:
        raise ValidityRangeError("k >= a and t >= a", f"got k={k}, t={t}, a={a}")


def _integral(value: Fraction, k: int, t: int, a: int) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"Non-integral tabulated trace at k={k}, t={t}, a={a}")
    return int(value)


def trace_rc_polynomial(k: int, t: int, a: int) -> int:
    """Tabulated tr rho_{(kt-a,a)}(RC) for a <= 5."""
    _check_polynomial(k, t, a, _RC_POLYNOMIALS)
    return _integral(_polynomial_prefactor(k, t, a) * _RC_POLYNOMIALS[a](k, t), k, t, a)


def trace_rcrc_polynomial(k: int, t: int, a: int) -> int:
    """Tabulated tr rho_{(kt-a,a)}(RCRC) for a <= 3.

    For a = 4, 5 only RCRC_LEADING_TERMS are known; compare them against
    rcrc_polynomial_value.
    """
    _check_polynomial(k, t, a, _RCRC_POLYNOMIALS)
    value = _polynomial_prefactor(k, t, a) ** 2 * _RCRC_POLYNOMIALS[a](k, t)
    return _integral(value, k, t, a)


def rc_polynomial_value(k: int, t: int, a: int) -> Fraction:
    """The exact RC trace divided by the tabulated prefactor."""
    return trace_rc_two_row(k, t, a) / _polynomial_prefactor(k, t, a)


def rcrc_polynomial_value(k: int, t: int, a: int) -> Fraction:
    """The exact RCRC trace divided by the squared prefactor."""
    return trace_rcrc_two_row(k, t, a) / _polynomial_prefactor(k, t, a) ** 2


# ============================================================================
# TABULATED t = 3 FAMILY (valid for k >= a, k >= 2)
# ============================================================================

def _coefficients(*values: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


# Coefficients from the highest power of k down.
_T3_RC_POLYNOMIALS = {
    0: _coefficients("1"),
    1: _coefficients("0"),
    2: _coefficients("1"),
    3: _coefficients("1"),
    4: _coefficients("1"),
    5: _coefficients("1"),
    6: _coefficients("1", "35/9", "-92/9"),
    7: _coefficients("1"),
    8: _coefficients("1", "77/9", "-274/9"),
    9: _coefficients("1", "4/9", "-9"),
    10: _coefficients("1", "143/9", "-72"),
    11: _coefficients("1", "25/9", "-214/9"),
    12: _coefficients("1", "194/9", "-15421/81", "3310/27", "72640/81"),
    13: _coefficients("1", "58/9", "-467/9"),
    14: _coefficients("1", "326/9", "-23149/81", "-45346/81", "127480/27"),
    15: _coefficients("1", "130/27", "-30775/243", "83170/243", "17384/81"),
    16: _coefficients("1", "500/9", "-28777/81", "-244160/81", "471884/27"),
    17: _coefficients("1", "331/27", "-52615/243", "2743/9", "482308/243"),
    18: _coefficients(
        "1", "641/9", "-248621/243", "-5416259/2187",
        "56013238/729", "-592053832/2187", "87973760/729",
    ),
    19: _coefficients("1", "598/27", "-78295/243", "-79210/243", "649976/81"),
}

_T3_RCRC_POLYNOMIALS = {
    0: _coefficients("1"),
    1: _coefficients("0"),
    2: _coefficients("1"),
    3: _coefficients("1"),
    4: _coefficients("1"),
    5: _coefficients("1"),
    6: _coefficients("1", "-10/9", "1729/81", "-7880/81", "8464/81"),
    7: _coefficients("1"),
    8: _coefficients("1", "14/9", "6037/81", "-45976/81", "75076/81"),
    9: _coefficients("1", "-16/3", "1582/81", "-688/9", "355/3"),
    10: _coefficients("1", "62/9", "18865/81", "-21488/9", "5184"),
}


def _horner(coefficients: tuple[Fraction, ...], k: int) -> Fraction:
    value = Fraction(0)
    for c in coefficients:
        value = value * k + c
    return value


def t3_normalizer(k: int, a: int) -> Fraction:
    """Denominator Q^3_a(k) of the t = 3 family; the branch follows the parity of a."""
    half = a // 2
    value = Fraction(perm(k, half) * 3 ** (2 * a // 3))
    if a % 2 == 0:
        sixth = a // 6
        return value * Fraction(perm(k, 2 * sixth), factorial(half) * 3**sixth)
    block = (a + 4) // 6
    value *= Fraction(perm(k, 2 * block - 1), 2 * factorial((a + 3) // 2))
    return value * Fraction(3) ** (2 - block)


def _check_t3(k: int, a: int, table: dict) -> None:
    if a not in table:
        raise ValidityRangeError(
            f"a in {sorted(table)} for the t = 3 family", f"got a={a}"
        )
    if k < 2 or k < a:
        raise ValidityRangeError("k >= a and k >= 2", f"got k={k}, a={a}")


def trace_rc_t3_polynomial(k: int, a: int) -> int:
    """Tabulated tr rho_{(3k-a,a)}(RC) on k x 3 for a <= 19."""
    _check_t3(k, a, _T3_RC_POLYNOMIALS)
    p = _horner(_T3_RC_POLYNOMIALS[a], k)
    if p == 0:
        return 0
    value = 6**k * factorial(k) ** 3 * p / t3_normalizer(k, a)
    return _integral(value, k, 3, a)


def trace_rcrc_t3_polynomial(k: int, a: int) -> int:
    """Tabulated tr rho_{(3k-a,a)}(RCRC) on k x 3 for a <= 10."""
    _check_t3(k, a, _T3_RCRC_POLYNOMIALS)
    p = _horner(_T3_RCRC_POLYNOMIALS[a], k)
    if p == 0:
        return 0
    value = (6**k * factorial(k) ** 3) ** 2 * p / t3_normalizer(k, a) ** 2
    return _integral(value, k, 3, a)
