"""
Determinant moments, exact for both ensembles.
"""
from fractions import Fraction
from math import prod

from permoments.exceptions import ValidityRangeError


def det_moment_gaussian(k: int, t: int) -> int:
    """E|det M|^{2t} = prod_{i<=k, j<=t} (i + j - 1), the k x t hook product."""
    if k < 0 or t < 0:
        raise ValidityRangeError("k >= 0 and t >= 0", f"got k={k}, t={t}")
    return prod(i + j - 1 for i in range(1, k + 1) for j in range(1, t + 1))


def det_moment_unitary_minor(d: int, k: int, t: int) -> Fraction:
    """E|det U_k|^{2t} for the leading k x k minor of a Haar U(d)."""
    if not 1 <= k <= d:
        raise ValidityRangeError("1 <= k <= d", f"got d={d}, k={k}")
    if t < 0:
        raise ValidityRangeError("t >= 0", f"got t={t}")
    shift = d - k
    return prod(
        (
            Fraction(i + j - 1, shift + i + j - 1)
            for i in range(1, k + 1)
            for j in range(1, t + 1)
        ),
        start=Fraction(1),
    )
