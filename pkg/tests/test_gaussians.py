import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from gheat.gaussians import (
    SQRT_TWO_PI,
    abs_moment,
    classical_shifted_moment,
    double_factorial,
    gaussian_tail,
    scaled_tail,
    tail_pair,
)


def tail_quad(x: float) -> float:
    """Independent oracle: adaptive quadrature of exp(-t^2/2) on [x, 40]."""
    val, _ = quad(lambda t: math.exp(-0.5 * t * t), x, 40.0, epsabs=0, epsrel=1e-13)
    return val


def mills_cf(x: float, depth: int = 120) -> float:
    """Independent oracle: Laplace continued fraction for the Mills ratio,
    scaled(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))), x > 0."""
    acc = 0.0
    for k in range(depth, 0, -1):
        acc = k / (x + acc)
    return 1.0 / (x + acc)


def test_tail_at_zero_is_half_total_mass():
    assert gaussian_tail(0.0) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-15)


def test_tail_far_left_is_total_mass():
    assert gaussian_tail(-40.0) == pytest.approx(SQRT_TWO_PI, rel=1e-15)


def test_tail_matches_quadrature_oracle():
    assert gaussian_tail(1.0) == pytest.approx(tail_quad(1.0), rel=1e-12)


def test_tail_rejects_non_finite():
    with pytest.raises(ValueError):
        gaussian_tail(math.nan)
    with pytest.raises(ValueError):
        scaled_tail(math.inf)


def test_scaled_tail_at_zero():
    assert scaled_tail(0.0) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-15)


def test_scaled_tail_matches_mills_continued_fraction():
    assert scaled_tail(10.0) == pytest.approx(mills_cf(10.0), rel=1e-10)


def test_scaled_tail_far_left_log_space_oracle():
    # tail(-30) = sqrt(2*pi) to machine precision, so
    # scaled(-30) = exp(450) * sqrt(2*pi), assembled in log space.
    expected = math.exp(450.0 + math.log(SQRT_TWO_PI))
    assert scaled_tail(-30.0) == pytest.approx(expected, rel=1e-10)


def test_scaled_tail_positive_and_decreasing():
    xs = np.linspace(-35.0, 35.0, 141)
    vals = scaled_tail(xs)
    assert np.all(vals > 0.0)
    assert np.all(np.diff(vals) < 0.0)


def test_classic_mills_bounds():
    # 1/(x + 1/x) < scaled(x) < 1/x for x >= 1
    for x in np.linspace(1.0, 30.0, 59):
        s = scaled_tail(x)
        assert 1.0 / (x + 1.0 / x) < s < 1.0 / x


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-37.0, max_value=37.0))
def test_tail_symmetry(x):
    total = gaussian_tail(x) + gaussian_tail(-x)
    assert total == pytest.approx(SQRT_TWO_PI, rel=1e-13)


def test_tail_pair_consistency():
    tv = tail_pair(1.5)
    assert 0.0 < tv.tail < SQRT_TWO_PI
    assert tv.scaled > 0.0
    assert tv.tail == pytest.approx(math.exp(-0.5 * 1.5**2) * tv.scaled, rel=1e-13)


def test_abs_moment_trivial():
    assert abs_moment(0) == 1.0
    assert abs_moment(2) == 1.0


def test_abs_moment_matches_quadrature():
    # E|Z|^3 via quadrature of |t|^3 exp(-t^2/2)/sqrt(2*pi)
    oracle, _ = quad(
        lambda t: abs(t) ** 3 * math.exp(-0.5 * t * t) / SQRT_TWO_PI,
        -40.0, 40.0, epsabs=0, epsrel=1e-13,
    )
    assert abs_moment(3) == pytest.approx(oracle, rel=1e-13)
    assert abs_moment(3) == pytest.approx(2.0 * math.sqrt(2.0 / math.pi), rel=1e-15)


def test_abs_moment_rejects_negative():
    with pytest.raises(ValueError):
        abs_moment(-1)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-10, max_value=10))
def test_shifted_moment_cubic_hand_expansion(x):
    assert classical_shifted_moment(3, x, 1.0) == pytest.approx(
        x**3 + 3 * x, rel=1e-12, abs=1e-12
    )


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=0, max_value=5),
)
def test_shifted_moment_variance_identity(x, s):
    assert classical_shifted_moment(2, x, s) == pytest.approx(
        x * x + s * s, rel=1e-13, abs=1e-13
    )


def test_shifted_moment_degenerate_scale():
    for m in range(7):
        assert classical_shifted_moment(m, 1.7, 0.0) == pytest.approx(1.7**m, rel=1e-15)


def test_shifted_moment_vectorized():
    xs = np.array([-1.0, 0.0, 2.0])
    out = classical_shifted_moment(3, xs, 1.0)
    assert np.allclose(out, xs**3 + 3 * xs, rtol=1e-13)


def test_double_factorial_conventions():
    assert double_factorial(0) == 1
    assert double_factorial(-1) == 1
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
