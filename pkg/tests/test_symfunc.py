"""
Tests for Kostka numbers, margin counts and typed counts.
"""
from itertools import combinations, product
from math import factorial, prod

import pytest
import sympy

from permoments.combinatorics.partitions import (
    Partition,
    conjugate,
    dominates,
    partitions,
)
from permoments.combinatorics.symfunc import (
    RowColType,
    column_type_counts,
    ib_count,
    ib_count_typed,
    im_count,
    inverse_kostka,
    kostka,
    kostka_matrix,
    restricted_inverse_kostka,
)
from permoments.exceptions import ResourceBudgetError, ShapeMismatchError

P = Partition.of


def brute_ib(mu: Partition, nu: Partition) -> int:
    """0-1 matrices with row sums mu and column sums nu, row by row."""
    cols = len(nu)
    rows = [list(combinations(range(cols), m)) for m in mu]
    count = 0
    for choice in product(*rows):
        sums = [0] * cols
        for row in choice:
            for j in row:
                sums[j] += 1
        count += tuple(sums) == nu.parts
    return count


def compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for x in range(total + 1):
        for rest in compositions(total - x, parts - 1):
            yield (x,) + rest


def brute_im(mu: Partition, nu: Partition) -> int:
    cols = len(nu)
    count = 0
    for choice in product(*(list(compositions(m, cols)) for m in mu)):
        count += tuple(map(sum, zip(*choice))) == nu.parts
    return count


class TestKostka:
    """Test Kostka numbers and the Kostka matrix."""

    def test_small_values(self):
        assert kostka(P(2, 1), P(1, 1, 1)) == 2
        assert kostka(P(3), P(1, 1, 1)) == 1
        assert kostka(P(3, 1), P(2, 1, 1)) == 2
        assert kostka(P(2, 1, 1), P(1, 1, 1, 1)) == 3
        assert kostka(P(2, 2), P(3, 1)) == 0

    def test_diagonal(self):
        for lam in partitions(7):
            assert kostka(lam, lam) == 1

    @pytest.mark.parametrize("n", range(1, 11))
    def test_unit_triangular(self, n):
        """matrix[content, shape] is nonzero only when shape dominates content."""
        matrix = kostka_matrix(n)
        for content in matrix.shapes:
            for shape in matrix.shapes:
                value = matrix[content, shape]
                if shape == content:
                    assert value == 1
                elif value:
                    assert dominates(shape, content)

    def test_kostka_accessor_orientation(self):
        matrix = kostka_matrix(3)
        assert matrix.kostka(P(2, 1), P(1, 1, 1)) == 2
        assert matrix[P(1, 1, 1), P(2, 1)] == 2
        assert matrix[P(2, 1), P(1, 1, 1)] == 0

    def test_unknown_shape(self):
        with pytest.raises(ShapeMismatchError):
            kostka_matrix(3)[P(4), P(3)]

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_inverse(self, n):
        matrix = kostka_matrix(n)
        inverse = inverse_kostka(matrix)
        assert matrix.to_sympy() * inverse.to_sympy() == sympy.eye(len(matrix))

    def test_restricted_matrix(self):
        matrix = kostka_matrix(6, restrict=(2, 6))
        assert matrix.shapes == (P(6), P(5, 1), P(4, 2), P(3, 3))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_vanishes_off_dominance(self, n):
        """K_{lam mu} > 0 exactly when lam dominates mu."""
        for lam in partitions(n):
            for mu in partitions(n):
                assert (kostka(lam, mu) > 0) == dominates(lam, mu)

    def test_restricted_inverse(self):
        matrix = kostka_matrix(6, restrict=(2, 6))
        inverse = restricted_inverse_kostka(6, 2)
        assert inverse.shapes == matrix.shapes
        assert matrix.to_sympy() * inverse.to_sympy() == sympy.eye(len(matrix))

    def test_json(self):
        data = kostka_matrix(2).to_json()
        assert data["shapes"] == [[2], [1, 1]]
        assert data["entries"] == [["1", "0"], ["1", "1"]]


class TestMarginCounts:
    """Test IB / IM counts against enumeration."""

    def test_ib_example(self):
        assert ib_count(P(2, 1), P(2, 1)) == 1
        assert ib_count(P(1, 1), P(1, 1)) == 2

    @pytest.mark.parametrize("n", range(1, 9))
    def test_ib_routes_agree_with_enumeration(self, n):
        for mu in partitions(n):
            for nu in partitions(n):
                if len(mu) * len(nu) > 20:
                    continue
                expected = brute_ib(mu, nu)
                assert ib_count(mu, nu) == expected
                assert ib_count(mu, nu, method="kostka") == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_im_agrees_with_enumeration(self, n):
        for mu in partitions(n):
            for nu in partitions(n):
                assert im_count(mu, nu) == brute_im(mu, nu)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_ib_symmetric(self, n):
        for mu in partitions(n):
            for nu in partitions(n):
                assert ib_count(mu, nu) == ib_count(nu, mu)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_ib_gale_ryser(self, n):
        """IB_{mu nu} > 0 exactly when the conjugate of mu dominates nu."""
        for mu in partitions(n):
            for nu in partitions(n):
                assert (ib_count(mu, nu) > 0) == dominates(conjugate(mu), nu)

    def test_size_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            ib_count(P(2), P(3))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            ib_count(P(1), P(1), method="guess")


class TestTypedCounts:
    """Test typed counts over 0..l matrices."""

    def test_reduces_to_ib_for_binary(self):
        u = RowColType(((2,), (1,)), 3)
        w = RowColType(((2,), (1,), (0,)), 2)
        assert ib_count_typed(u, w, 1) == 1

    def test_mismatched_totals(self):
        u = RowColType(((2,), (1,)), 3)
        w = RowColType(((1,), (1,), (0,)), 2)
        assert ib_count_typed(u, w, 1) == 0

    def test_dimension_mismatch(self):
        u = RowColType(((1,), (1,)), 2)
        w = RowColType(((1,), (1,), (0,)), 2)
        with pytest.raises(ShapeMismatchError):
            ib_count_typed(u, w, 1)

    def test_area_guard(self, settings):
        small = settings.model_copy(update={"TYPED_COUNT_MAX_AREA": 3})
        u = RowColType(((1,), (1,)), 2)
        w = RowColType(((1,), (1,)), 2)
        with pytest.raises(ResourceBudgetError):
            ib_count_typed(u, w, 1, small)

    def test_column_profile_area_override(self, settings):
        u = RowColType(((1,), (1,)), 2)
        assert column_type_counts(u, settings)
        with pytest.raises(ResourceBudgetError):
            column_type_counts(u, settings, max_area=3)

    def test_type_metadata(self):
        u = RowColType(((1, 0), (1, 0), (0, 2)), 3)
        assert u.totals() == (2, 2)
        assert u.stabilizer() == 2
        assert u.orbit_size() == 3
        assert u.word(2) == [0, 2, 2]
        assert u.canonical().vectors == ((1, 0), (1, 0), (0, 2))

    @pytest.mark.parametrize(
        "vectors, bound",
        [(((1,), (1,)), 2), (((2, 0), (0, 1), (1, 1)), 3), (((1, 1), (2, 0)), 3)],
    )
    def test_column_profile_covers_all_fillings(self, vectors, bound):
        """sum_w |orbit w| N(u, w) = number of fillings with rows u."""
        u = RowColType(vectors, bound)
        profile = column_type_counts(u)
        total = sum(w.orbit_size() * n for w, n in profile.items())
        expected = prod(
            factorial(bound)
            // (prod(factorial(x) for x in v) * factorial(bound - sum(v)))
            for v in vectors
        )
        assert total == expected

    def test_column_profile_matches_typed_count(self):
        u = RowColType(((2, 0), (0, 1), (1, 1)), 3)
        for w, n in column_type_counts(u).items():
            assert ib_count_typed(u, w, 2) == n
