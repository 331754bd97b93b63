"""
Permanents by Ryser's inclusion-exclusion formula.

Perm(M) = (-1)^n sum_{S subset of columns} (-1)^{|S|} prod_i sum_{j in S} M_ij
"""
from itertools import permutations

import numpy as np

from permoments.config import Settings, get_settings
from permoments.exceptions import ResourceBudgetError

# Largest (batch x rows x subsets) block evaluated at once.
_BLOCK_ELEMENTS = 1 << 22


def _check_size(n: int, settings: Settings) -> None:
    if n > settings.PERMANENT_MAX_SIZE:
        raise ResourceBudgetError("PERMANENT_MAX_SIZE", n, settings.PERMANENT_MAX_SIZE)


def permanent(matrix: np.ndarray, settings: Settings | None = None) -> complex:
    """Ryser over subsets in Gray-code order: one column update per step."""
    settings = settings or get_settings()
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"Permanent needs a square matrix, got shape {m.shape}")
    _check_size(n, settings)
    if n == 0:
        return 1 + 0j

    sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    for step in range(1, 1 << n):
        column = (step & -step).bit_length() - 1
        gray ^= 1 << column
        if gray >> column & 1:
            sums += m[:, column]
        else:
            sums -= m[:, column]
        sign = -1 if bin(gray).count("1") % 2 else 1
        total += sign * np.prod(sums)
    return complex((-1) ** n * total)


def _subset_masks(n: int) -> tuple[np.ndarray, np.ndarray]:
    masks = (np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1
    sizes = masks.sum(axis=1)
    signs = np.where((n - sizes) % 2, -1.0, 1.0)
    return masks.astype(complex), signs


def permanents(batch: np.ndarray, settings: Settings | None = None) -> np.ndarray:
    """Permanents of a stack of n x n matrices, shape (m, n, n) -> (m,)."""
    settings = settings or get_settings()
    stack = np.asarray(batch, dtype=complex)
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise ValueError(f"Expected a stack of square matrices, got {stack.shape}")
    m, n, _ = stack.shape
    _check_size(n, settings)
    if n == 0:
        return np.ones(m, dtype=complex)

    masks, signs = _subset_masks(n)
    chunk = max(1, _BLOCK_ELEMENTS // (n << n))
    out = np.empty(m, dtype=complex)
    for start in range(0, m, chunk):
        block = stack[start : start + chunk]
        # (b, rows, subsets): row sums over each column subset
        row_sums = block @ masks.T
        out[start : start + chunk] = np.prod(row_sums, axis=1) @ signs
    return out


def naive_permanent(matrix: np.ndarray) -> complex:
    """Sum over all n! permutations; reference for small n."""
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    return complex(
        sum(np.prod(m[np.arange(n), list(p)]) for p in permutations(range(n)))
    )
