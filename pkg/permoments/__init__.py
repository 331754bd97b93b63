"""
PERMOMENTS - Exact moments of random permanents and determinants.

Computes, bounds and cross-validates E|Perm(M)|^{2t} and E|det(M)|^{2t}
for complex Gaussian matrices and for minors of Haar-random unitaries.
"""

__version__ = "0.1.0"
__author__ = "Permoments Team"
__description__ = "Exact-arithmetic toolkit for permanent and determinant moments"
