"""
Random matrix ensembles.

Gaussian matrices have i.i.d. standard complex normal entries (E|x|^2 = 1).
Haar unitaries come from the QR factorization of a complex Gaussian matrix,
with the phases of R's diagonal moved into Q.
"""
import numpy as np
from scipy.linalg import qr

from permoments.exceptions import ValidityRangeError

SQRT_HALF = np.sqrt(0.5)


def _check_minor(d: int, k: int) -> None:
    if not 1 <= k <= d:
        raise ValidityRangeError("1 <= k <= d", f"got d={d}, k={k}")


def sample_gaussian(k: int, rng: np.random.Generator) -> np.ndarray:
    """k x k matrix, real and imaginary parts N(0, 1/2)."""
    return sample_gaussian_batch(k, 1, rng)[0]


def sample_gaussian_batch(k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of n independent k x k Gaussian matrices, shape (n, k, k)."""
    re = rng.standard_normal((n, k, k))
    im = rng.standard_normal((n, k, k))
    return (re + 1j * im) * SQRT_HALF


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary."""
    z = sample_gaussian(d, rng)
    q, r = qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def sample_haar_minor(d: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Leading k x k block of a Haar U(d)."""
    _check_minor(d, k)
    return haar_unitary(d, rng)[:k, :k]


def haar_unitary_batch(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of n Haar unitaries, shape (n, d, d)."""
    z = sample_gaussian_batch(d, n, rng)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[:, np.newaxis, :]


def sample_haar_minor_batch(
    d: int, k: int, n: int, rng: np.random.Generator
) -> np.ndarray:
    """Stack of n leading k x k minors, shape (n, k, k)."""
    _check_minor(d, k)
    return haar_unitary_batch(d, n, rng)[:, :k, :k]
