import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from gheat.gaussians import classical_shifted_moment, double_factorial, gaussian_tail
from gheat.polys import (
    RationalPoly,
    g_poly,
    h_poly,
    left_asymptote,
    m_fn,
    mills_bounds,
    pair_identities,
)


def m_quad(n: int, x: float) -> float:
    """Oracle: adaptive quadrature of int_x^inf (s-x)^(2n+1) e^{-s^2/2} ds."""
    val, _ = quad(
        lambda s: (s - x) ** (2 * n + 1) * math.exp(-0.5 * s * s),
        x, max(x, 0.0) + 45.0, epsabs=0, epsrel=1e-12, limit=200,
    )
    return val


class TestPairConstruction:
    def test_hand_expansions(self):
        assert g_poly(0) == RationalPoly([0, 1], "odd")
        assert g_poly(1) == RationalPoly([0, 3, 0, 1], "odd")
        assert g_poly(2) == RationalPoly([0, 15, 0, 10, 0, 1], "odd")
        assert h_poly(0) == RationalPoly([1], "even")
        assert h_poly(1) == RationalPoly([2, 0, 1], "even")
        assert h_poly(2) == RationalPoly([8, 0, 9, 0, 1], "even")

    @pytest.mark.parametrize("n", range(13))
    def test_degrees_parity_monic(self, n):
        g, h = g_poly(n), h_poly(n)
        assert g.degree == 2 * n + 1 and g.parity == "odd"
        assert h.degree == 2 * n and h.parity == "even"
        assert g.coeffs[-1] == 1 and h.coeffs[-1] == 1

    @pytest.mark.parametrize("n", range(13))
    def test_integer_coefficients(self, n):
        # observed property, checked but not relied upon
        for c in list(g_poly(n).coeffs) + list(h_poly(n).coeffs):
            assert c.denominator == 1

    def test_h_at_zero_is_double_factorial(self):
        for n in range(9):
            assert h_poly(n).coeffs[0] == double_factorial(2 * n)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_pair_identities_exact(self, n):
        rep = pair_identities(n)
        assert rep.cross and rep.wronskian and rep.all_pass

    def test_pair_identities_domain(self):
        with pytest.raises(ValueError):
            pair_identities(0)

    @settings(max_examples=150, deadline=None)
    @given(
        st.integers(min_value=0, max_value=8),
        st.floats(min_value=-10, max_value=10),
    )
    def test_g_matches_classical_moment(self, n, x):
        # g_n(x) = E[(x+Z)^(2n+1)]
        expected = classical_shifted_moment(2 * n + 1, x, 1.0)
        assert g_poly(n)(x) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_parity_violation_rejected(self):
        with pytest.raises(ValueError):
            RationalPoly([1, 1], "odd")

    def test_derivative(self):
        assert g_poly(1).derivative() == RationalPoly([3, 0, 3], "even")


class TestMFn:
    def test_value_at_zero(self):
        for n in range(4):
            assert m_fn(n, 0.0) == pytest.approx(double_factorial(2 * n), rel=1e-13)

    def test_far_right_tiny_nonnegative(self):
        v = m_fn(1, 30.0)
        assert 0.0 <= v < 1e-100

    def test_matches_quadrature_oracle_left(self):
        assert m_fn(1, -5.0) == pytest.approx(m_quad(1, -5.0), rel=1e-10)

    @pytest.mark.parametrize("x", [-8.0, -2.0, 0.5, 3.0, 5.9, 6.0, 6.1, 9.0])
    @pytest.mark.parametrize("n", [1, 3])
    def test_matches_quadrature_oracle_both_routes(self, n, x):
        assert m_fn(n, x) == pytest.approx(m_quad(n, x), rel=1e-9, abs=1e-250)

    @pytest.mark.parametrize("x", [-2.0, 3.5, 7.0])
    def test_high_order_matches_quadrature(self, x):
        assert m_fn(8, x) == pytest.approx(m_quad(8, x), rel=1e-9)

    def test_nonnegative_and_nonincreasing_grid(self):
        xs = np.linspace(-10.0, 10.0, 201)
        for n in range(9):
            vals = np.array([m_fn(n, float(x)) for x in xs])
            assert np.all(vals >= -1e-15)
            assert np.all(np.diff(vals) <= 1e-15 * np.maximum(1.0, np.abs(vals[:-1])))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            m_fn(-1, 0.0)
        with pytest.raises(ValueError):
            m_fn(1, math.inf)


class TestMillsBounds:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    @pytest.mark.parametrize("n", range(1, 11))
    def test_sandwich_and_gap_bounds(self, n, x):
        # for large n the true enclosure is tighter than one ulp of tail,
        # so the float comparison needs rounding slack
        b = mills_bounds(n, x)
        slack = 5e-14 * b.tail
        assert b.lower <= b.tail + slack
        assert b.tail <= b.upper + slack
        assert -slack <= b.tail - b.lower <= b.lower_gap_bound
        assert -slack <= b.upper - b.tail <= b.upper_gap_bound

    def test_monotone_tightening_in_n(self):
        lowers = [mills_bounds(n, 2.0).lower for n in range(1, 11)]
        uppers = [mills_bounds(n, 2.0).upper for n in range(1, 11)]
        assert all(a < b for a, b in zip(lowers, lowers[1:]))
        assert all(a > b for a, b in zip(uppers, uppers[1:]))

    def test_specific_case(self):
        b = mills_bounds(1, 0.5)
        assert b.lower <= gaussian_tail(0.5) <= b.upper

    def test_upper_gap_vacuous_at_n1(self):
        assert mills_bounds(1, 2.0).upper_gap_bound == math.inf

    def test_domain(self):
        with pytest.raises(ValueError):
            mills_bounds(1, 0.0)
        with pytest.raises(ValueError):
            mills_bounds(0, 1.0)


class TestLeftAsymptote:
    def test_limit_values_far_left(self):
        # first asymptotic correction is (2n)(2n+1)/(2 x^2), i.e. 0.33% at
        # n = 1, x = -30, growing with n
        assert left_asymptote(1, -30.0) == pytest.approx(1.0, rel=0.005)
        assert left_asymptote(2, -30.0) == pytest.approx(6.0, rel=0.02)
        assert left_asymptote(3, -60.0) == pytest.approx(120.0, rel=0.01)

    def test_enclosures_from_pair(self):
        # (2n-1)! x^(2n+1)/g_n(x) <= value <= (2n-1)! x^(2n)/(g'_{n-1} + x g_{n-1})
        n, x = 1, -5.0
        val = left_asymptote(n, x)
        fact = math.factorial(2 * n - 1)
        gm1 = g_poly(n - 1)
        lo = fact * x ** (2 * n + 1) / g_poly(n)(x)
        hi = fact * x ** (2 * n) / (gm1.derivative()(x) + x * gm1(x))
        assert lo < val < hi

    def test_domain(self):
        with pytest.raises(ValueError):
            left_asymptote(1, 0.5)
        with pytest.raises(ValueError):
            left_asymptote(0, -1.0)
