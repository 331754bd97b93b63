"""
Tests for trace formulas and trace tables.
"""
from fractions import Fraction

import pytest
import sympy

from permoments.combinatorics.partitions import Partition, partitions
from permoments.combinatorics.plethysm import plethysm_bound
from permoments.exceptions import (
    ResourceBudgetError,
    ShapeMismatchError,
    UnsupportedParameterError,
    ValidityRangeError,
)
from permoments.schemas.trace import GridSpec, TraceKind, TraceMethod
from permoments.services.moments.magic_squares import magic_square_moment
from permoments.services.traces import (
    RCRC_LEADING_TERMS,
    TraceService,
    completeness_sum,
    gamma_sum,
    gamma_sum_kostka_form,
    gaussian_moment_from_traces,
    omega,
    q_sum,
    rcrc_polynomial_value,
    t3_normalizer,
    trace_bruteforce,
    trace_psi,
    trace_rc_general,
    trace_rc_polynomial,
    trace_rc_t2_closed,
    trace_rc_t3_polynomial,
    trace_rc_two_row,
    trace_rcrc_general,
    trace_rcrc_polynomial,
    trace_rcrc_t2_closed,
    trace_rcrc_t3_polynomial,
    trace_rcrc_two_row,
    trace_shape_bruteforce,
)
from permoments.services.traces.psi import shapes_for
from permoments.services.traces.two_row import _blocks

P = Partition.of

RC_3X3 = {
    P(9): 46656,
    P(7, 2): 5184,
    P(6, 3): 2304,
    P(5, 2, 2): 144,
    P(4, 4, 1): 576,
}

RC_4X3 = {
    P(12): 2**13 * 3**7,
    P(10, 2): 2**11 * 3**6,
    P(9, 3): 2**11 * 3**5,
    P(8, 4): 2**12 * 3**4,
    P(6, 6): 2**12 * 3**3,
    P(8, 2, 2): 2**9 * 3**4,
    P(7, 4, 1): 2**10 * 3**4,
    P(6, 4, 2): 2**11 * 3**2,
    P(4, 4, 4): 2**9 * 3**3,
}


class TestTwoRowSums:
    """Test Omega weights and the Q / Gamma sums."""

    def test_omega_empty_shape(self):
        # all-zero colouring: r! prod s! / r!
        assert omega(Partition(()), 3, 3) == 6**3

    def test_omega_outside_box(self):
        assert omega(P(4), 3, 3) == 0

    def test_q_trivial(self):
        assert q_sum(3, 3, 0) == 46656
        assert q_sum(3, 3, -1) == 0

    @pytest.mark.parametrize("k, t", [(2, 2), (3, 3), (4, 3), (3, 5)])
    def test_gamma_forms_agree(self, k, t):
        for a in range(k * t // 2 + 1):
            assert gamma_sum_kostka_form(k, t, a) == gamma_sum(k, t, a)

    def test_rc_two_row_3x3(self):
        values = [trace_rc_two_row(3, 3, a) for a in range(5)]
        assert values == [46656, 0, 5184, 2304, 0]

    def test_rcrc_is_square_when_multiplicity_one(self):
        for a in range(5):
            assert trace_rcrc_two_row(3, 3, a) == trace_rc_two_row(3, 3, a) ** 2

    def test_a_out_of_range(self):
        with pytest.raises(ValidityRangeError):
            trace_rc_two_row(3, 3, 5)

    def test_cached_blocks_are_immutable(self):
        omega_rows, omega_cols, ib = _blocks(3, 3, 2)
        assert isinstance(omega_rows, tuple)
        assert isinstance(omega_cols, tuple)
        assert all(isinstance(row, tuple) for row in ib)
        with pytest.raises(TypeError):
            ib[0][0] = 0
        assert q_sum(3, 3, 2) - q_sum(3, 3, 1) == 5184

    @pytest.mark.parametrize("k, t", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)])
    def test_rcrc_symmetric_in_k_and_t(self, k, t):
        for a in range(k * t // 2 + 1):
            assert trace_rcrc_two_row(k, t, a) == trace_rcrc_two_row(t, k, a)
            assert trace_rc_two_row(k, t, a) == trace_rc_two_row(t, k, a)


class TestClosedForms:
    """Test the t=2 closed forms and the tabulated polynomial family."""

    @pytest.mark.parametrize("k", range(1, 9))
    def test_t2_matches_q_route(self, k):
        for a in range(k + 1):
            assert trace_rc_t2_closed(k, a) == trace_rc_two_row(k, 2, a)
            assert trace_rcrc_t2_closed(k, a) == trace_rcrc_two_row(k, 2, a)

    def test_t2_matches_q_route_up_to_40(self):
        for k in range(1, 41):
            for a in range(k + 1):
                assert trace_rc_t2_closed(k, a) == trace_rc_two_row(k, 2, a)

    @pytest.mark.parametrize("k", [12, 16, 20])
    def test_t2_rcrc_matches_gamma_route_large(self, k):
        for a in range(k + 1):
            assert trace_rcrc_t2_closed(k, a) == trace_rcrc_two_row(k, 2, a)

    def test_t2_odd_vanishes(self):
        assert trace_rc_t2_closed(5, 3) == 0

    @pytest.mark.parametrize("k, t", [(3, 3), (4, 3), (4, 4), (5, 4), (5, 6)])
    def test_polynomial_family_low_a(self, k, t):
        for a in range(4):
            assert trace_rc_polynomial(k, t, a) == trace_rc_two_row(k, t, a)
            assert trace_rcrc_polynomial(k, t, a) == trace_rcrc_two_row(k, t, a)

    @pytest.mark.parametrize("k, t", [(4, 4), (4, 5), (5, 4), (5, 5), (5, 6), (6, 6)])
    def test_polynomial_family_a4_a5(self, k, t):
        for a in (4, 5):
            if min(k, t) >= a:
                assert trace_rc_polynomial(k, t, a) == trace_rc_two_row(k, t, a)

    @pytest.mark.parametrize("a", [4, 5])
    @pytest.mark.parametrize("shift", [0, 1])
    def test_rcrc_leading_terms(self, a, shift):
        """Along t = k + shift the normalized RCRC trace is a degree-8 polynomial."""
        n = sympy.Symbol("n")
        points = []
        for k in range(a, a + 10):
            value = rcrc_polynomial_value(k, k + shift, a)
            points.append((k, sympy.Rational(value.numerator, value.denominator)))
        fitted = sympy.Poly(sympy.interpolate(points, n), n)
        assert fitted.degree() == 8
        leading = sympy.Poly(
            sum(
                coefficient * n**i * (n + shift) ** j
                for (i, j), coefficient in RCRC_LEADING_TERMS[a].items()
            ),
            n,
        )
        for power in (8, 7, 6):
            assert fitted.coeff_monomial(n**power) == leading.coeff_monomial(n**power)

    def test_polynomial_values(self):
        assert trace_rc_polynomial(3, 3, 2) == 5184
        assert trace_rc_polynomial(4, 3, 3) == 2**11 * 3**5

    def test_polynomial_validity(self):
        with pytest.raises(ValidityRangeError):
            trace_rc_polynomial(4, 3, 4)
        with pytest.raises(ValidityRangeError):
            trace_rcrc_polynomial(5, 5, 4)


class TestThreeColumnFamily:
    """Test the tabulated t=3 family against the Q / Gamma routes."""

    def test_normalizer_values(self):
        for k in range(3, 9):
            assert t3_normalizer(k, 0) == 1
            assert t3_normalizer(k, 2) == 3 * k
            assert t3_normalizer(k, 3) == Fraction(9 * k**2, 4)
            assert t3_normalizer(k, 4) == Fraction(9 * k * (k - 1), 2)
            assert t3_normalizer(k, 5) == Fraction(27 * k**2 * (k - 1), 16)
        assert t3_normalizer(6, 6) == 16200

    def test_known_values(self):
        assert trace_rc_t3_polynomial(3, 2) == 5184
        assert trace_rc_t3_polynomial(3, 3) == 2304
        assert trace_rc_t3_polynomial(4, 4) == 2**12 * 3**4
        assert trace_rc_t3_polynomial(2, 2) == trace_rc_t2_closed(3, 2)

    @pytest.mark.parametrize("k", range(2, 11))
    def test_rc_matches_q_route(self, k):
        for a in range(k + 1):
            assert trace_rc_t3_polynomial(k, a) == trace_rc_two_row(k, 3, a)

    @pytest.mark.parametrize("k", range(2, 11))
    def test_rcrc_matches_gamma_route(self, k):
        for a in range(min(k, 10) + 1):
            assert trace_rcrc_t3_polynomial(k, a) == trace_rcrc_two_row(k, 3, a)

    @pytest.mark.slow
    @pytest.mark.parametrize("k", range(11, 20))
    def test_rc_matches_q_route_large(self, k):
        for a in range(k + 1):
            assert trace_rc_t3_polynomial(k, a) == trace_rc_two_row(k, 3, a)

    @pytest.mark.parametrize("a", range(11))
    def test_rcrc_below_rc_square(self, a):
        """RC has nonnegative eigenvalues, so tr RCRC <= (tr RC)^2."""
        for k in range(max(a, 2), 40):
            rc = trace_rc_t3_polynomial(k, a)
            assert 0 <= trace_rcrc_t3_polynomial(k, a) <= rc**2

    def test_validity(self):
        with pytest.raises(ValidityRangeError):
            trace_rc_t3_polynomial(3, 4)
        with pytest.raises(ValidityRangeError):
            trace_rc_t3_polynomial(25, 20)
        with pytest.raises(ValidityRangeError):
            trace_rcrc_t3_polynomial(12, 11)
        with pytest.raises(ValidityRangeError):
            trace_rc_t3_polynomial(1, 0)

    def test_service_uses_table_on_either_side(self):
        service = TraceService()
        for grid in (GridSpec(k=4, t=3), GridSpec(k=3, t=4)):
            entry = service.entry(
                P(8, 4), grid, TraceKind.RC, TraceMethod.POLYNOMIAL_TABLE
            )
            assert entry.method is TraceMethod.POLYNOMIAL_TABLE
            assert entry.value == RC_4X3[P(8, 4)]


class TestGeneralTraces:
    """Test the permutation-module route for deeper shapes."""

    def test_psi_trivial(self):
        assert trace_psi(P(9), GridSpec(k=3, t=3)) == 46656

    @pytest.mark.parametrize("shape, value", list(RC_3X3.items()))
    def test_rc_3x3(self, shape, value):
        assert trace_rc_general(shape, GridSpec(k=3, t=3)) == value

    def test_rc_3x3_vanishing(self):
        grid = GridSpec(k=3, t=3)
        for shape in partitions(9, max_depth=3):
            if shape not in RC_3X3:
                assert trace_rc_general(shape, grid) == 0

    def test_too_deep_vanishes(self):
        assert trace_rc_general(P(3, 3, 2, 1), GridSpec(k=3, t=3)) == 0

    def test_rcrc_three_row(self):
        grid = GridSpec(k=3, t=3)
        assert trace_rcrc_general(P(5, 2, 2), grid) == 144**2
        assert trace_rcrc_general(P(4, 3, 2), grid) == 0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            trace_rc_general(P(8), GridSpec(k=3, t=3))

    def test_psi_honours_area_budget(self, settings, grid_3x3):
        """A cached default-budget value must not hide a smaller budget."""
        assert trace_psi(P(6, 3), grid_3x3) > 0
        small = settings.model_copy(update={"TYPED_COUNT_MAX_AREA": 4})
        with pytest.raises(ResourceBudgetError):
            trace_psi(P(6, 3), grid_3x3, small)

    @pytest.mark.parametrize("k, t", [(3, 3), (4, 3), (3, 4)])
    def test_rcrc_between_rank_bounds(self, k, t, settings):
        """(tr RC)^2 / Pl <= tr RCRC <= (tr RC)^2, with equality when Pl = 1."""
        grid = GridSpec(k=k, t=t)
        checked = 0
        for shape in shapes_for(grid):
            rank_bound = plethysm_bound(shape, k, t, settings)
            rc = trace_rc_general(shape, grid)
            try:
                rcrc = trace_rcrc_general(shape, grid)
            except UnsupportedParameterError:
                if grid.boxes > settings.BRUTE_FORCE_MAX_BOXES:
                    continue
                rcrc = trace_shape_bruteforce(shape, grid, TraceKind.RCRC)
            assert rcrc <= rc**2
            assert rc**2 <= rank_bound * rcrc
            if rank_bound == 1:
                assert rcrc == rc**2
            checked += 1
        assert checked >= len(shapes_for(grid)) // 2

    def test_budget(self, settings):
        small = settings.model_copy(update={"PSI_MAX_BOXES": 8})
        with pytest.raises(ResourceBudgetError):
            trace_rc_general(P(5, 2, 2), GridSpec(k=3, t=3), small)


class TestTraceService:
    """Test trace tables and their expansion sums."""

    def test_table_3x3(self, grid_3x3):
        table = TraceService().build_table(grid_3x3)
        nonzero = {entry.partition: entry.value for entry in table.nonzero().entries}
        assert nonzero == RC_3X3
        assert table.value(P(5, 2, 2)) == 144

    def test_table_4x3(self):
        table = TraceService().build_table(GridSpec(k=4, t=3))
        nonzero = {entry.partition: entry.value for entry in table.nonzero().entries}
        assert nonzero == RC_4X3

    def test_swapped_grid_agrees(self):
        service = TraceService()
        a = service.build_table(GridSpec(k=4, t=3))
        b = service.build_table(GridSpec(k=3, t=4))
        assert [e.value for e in a.entries] == [e.value for e in b.entries]

    def test_swapped_grid_agrees_rcrc(self):
        service = TraceService()
        a = service.build_table(GridSpec(k=4, t=3), TraceKind.RCRC)
        b = service.build_table(GridSpec(k=3, t=4), TraceKind.RCRC)
        assert [e.value for e in a.entries] == [e.value for e in b.entries]

    def test_falls_back_to_brute_force(self, settings, grid_3x3):
        service = TraceService(settings.model_copy(update={"PSI_MAX_DEPTH": 2}))
        rc = service.entry(P(5, 2, 2), grid_3x3, TraceKind.RC)
        assert rc.method is TraceMethod.BRUTE_FORCE
        assert rc.value == 144
        rcrc = service.entry(P(5, 2, 2), grid_3x3, TraceKind.RCRC)
        assert rcrc.method is TraceMethod.BRUTE_FORCE
        assert rcrc.value == 144**2
        assert completeness_sum(service.build_table(grid_3x3)) == 1

    def test_no_fallback_on_large_grid(self, settings):
        service = TraceService(settings.model_copy(update={"PSI_MAX_DEPTH": 2}))
        with pytest.raises(ResourceBudgetError):
            service.entry(P(8, 2, 2), GridSpec(k=4, t=3), TraceKind.RC)

    def test_prefer_brute_force(self, grid_3x3):
        entry = TraceService().entry(
            P(7, 2), grid_3x3, TraceKind.RC, TraceMethod.BRUTE_FORCE
        )
        assert entry.method is TraceMethod.BRUTE_FORCE
        assert entry.value == 5184

    def test_methods(self, grid_3x3):
        service = TraceService()
        assert service.entry(P(7, 2), grid_3x3, TraceKind.RC).method is (
            TraceMethod.CLOSED_FORM
        )
        assert service.entry(P(5, 2, 2), grid_3x3, TraceKind.RC).method is (
            TraceMethod.PSI_CONVERSION
        )
        preferred = service.entry(
            P(6, 3), grid_3x3, TraceKind.RC, TraceMethod.POLYNOMIAL_TABLE
        )
        assert preferred.method is TraceMethod.POLYNOMIAL_TABLE
        assert preferred.value == 2304

    def test_polynomial_preference_falls_back(self, grid_3x3):
        entry = TraceService().entry(
            P(5, 4), grid_3x3, TraceKind.RC, TraceMethod.POLYNOMIAL_TABLE
        )
        assert entry.method is TraceMethod.CLOSED_FORM
        assert entry.value == 0

    @pytest.mark.parametrize("k, t", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (2, 5)])
    def test_completeness(self, k, t):
        table = TraceService().build_table(GridSpec(k=k, t=t))
        assert completeness_sum(table) == 1

    @pytest.mark.parametrize("k, t", [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)])
    def test_moment_from_traces(self, k, t):
        table = TraceService().build_table(GridSpec(k=k, t=t), TraceKind.RCRC)
        side, other = sorted((k, t))
        assert gaussian_moment_from_traces(table) == magic_square_moment(side, other)

    def test_moment_3x3(self, grid_3x3):
        table = TraceService().build_table(grid_3x3, TraceKind.RCRC)
        assert gaussian_moment_from_traces(table) == 8784

    def test_kind_mismatch(self, grid_3x3):
        table = TraceService().build_table(grid_3x3)
        with pytest.raises(ValueError):
            gaussian_moment_from_traces(table)

    def test_threads_do_not_change_result(self, grid_3x3):
        one = TraceService(threads=1).build_table(grid_3x3)
        four = TraceService(threads=4).build_table(grid_3x3)
        assert one == four


class TestBruteForce:
    """Test direct enumeration over R and C."""

    @pytest.mark.parametrize(
        "k, t, expected", [(1, 3, 6), (2, 2, 12), (3, 2, 144), (2, 3, 144)]
    )
    def test_count_route(self, k, t, expected):
        assert trace_bruteforce(GridSpec(k=k, t=t)).total == expected

    def test_count_route_3x3(self, grid_3x3):
        assert trace_bruteforce(grid_3x3).total == 8784

    def test_distribution_route(self):
        result = trace_bruteforce(GridSpec(k=3, t=2), distribution=True)
        assert result.total == 144
        assert sum(result.profile.values()) == Fraction(144)

    def test_distribution_route_3x3(self, grid_3x3):
        result = trace_bruteforce(grid_3x3, distribution=True)
        assert result.total == 8784
        assert sum(result.profile.values()) == Fraction(8784)
        # pi = e arises only from r1 c r2 with c = e
        assert result.profile[P(*[1] * 9)] == 1

    def test_guard(self, settings, grid_3x3):
        with pytest.raises(ResourceBudgetError):
            trace_bruteforce(GridSpec(k=4, t=3))
        small = settings.model_copy(update={"BRUTE_FORCE_DIST_MAX_BOXES": 6})
        with pytest.raises(ResourceBudgetError):
            trace_bruteforce(grid_3x3, distribution=True, settings=small)

    def test_shape_traces_3x3(self, grid_3x3):
        for shape in partitions(9, max_depth=3):
            assert trace_shape_bruteforce(shape, grid_3x3) == RC_3X3.get(shape, 0)

    def test_shape_traces_rcrc(self, grid_3x3):
        assert trace_shape_bruteforce(P(5, 2, 2), grid_3x3, TraceKind.RCRC) == 144**2
        assert trace_shape_bruteforce(P(4, 3, 2), grid_3x3, TraceKind.RCRC) == 0
        assert trace_shape_bruteforce(P(6, 3), grid_3x3, TraceKind.RCRC) == 2304**2

    @pytest.mark.parametrize("k, t", [(2, 3), (3, 2), (2, 4), (2, 5)])
    def test_shape_traces_two_row(self, k, t):
        grid = GridSpec(k=k, t=t)
        for a in range(k * t // 2 + 1):
            shape = P(k * t - a, a)
            assert trace_shape_bruteforce(shape, grid) == trace_rc_two_row(k, t, a)
            assert trace_shape_bruteforce(shape, grid, TraceKind.RCRC) == (
                trace_rcrc_two_row(k, t, a)
            )

    def test_shape_guard(self):
        with pytest.raises(ResourceBudgetError):
            trace_shape_bruteforce(P(10, 2), GridSpec(k=4, t=3))
        with pytest.raises(ShapeMismatchError):
            trace_shape_bruteforce(P(8), GridSpec(k=3, t=3))
