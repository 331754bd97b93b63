"""
Tests for determinant moments.
"""
from fractions import Fraction

import pytest

from permoments.exceptions import ValidityRangeError
from permoments.services.moments import det_moment_gaussian, det_moment_unitary_minor


class TestDeterminantMoments:
    """Test the Gaussian and unitary-minor determinant products."""

    def test_gaussian_values(self):
        assert det_moment_gaussian(2, 2) == 12
        assert det_moment_gaussian(3, 3) == 8640
        assert det_moment_gaussian(1, 5) == 120
        assert det_moment_gaussian(4, 0) == 1

    def test_gaussian_symmetry(self):
        assert det_moment_gaussian(3, 5) == det_moment_gaussian(5, 3)

    def test_full_unitary_is_one(self):
        for d in range(1, 6):
            for t in range(4):
                assert det_moment_unitary_minor(d, d, t) == 1

    def test_single_entry(self):
        assert det_moment_unitary_minor(2, 1, 1) == Fraction(1, 2)
        assert det_moment_unitary_minor(5, 1, 2) == Fraction(2, 30)

    def test_large_d_scaling(self):
        """d^{kt} E|det U_k|^{2t} approaches the Gaussian value."""
        d = 10**4
        scaled = det_moment_unitary_minor(d, 2, 2) * d**4
        assert float(scaled) == pytest.approx(det_moment_gaussian(2, 2), rel=1e-2)

    def test_invalid(self):
        with pytest.raises(ValidityRangeError):
            det_moment_unitary_minor(2, 3, 1)
        with pytest.raises(ValidityRangeError):
            det_moment_unitary_minor(3, 2, -1)
        with pytest.raises(ValidityRangeError):
            det_moment_gaussian(-1, 2)
