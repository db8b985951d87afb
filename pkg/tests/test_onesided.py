import math

import numpy as np
import pytest
from scipy.integrate import quad

from gheat.gaussians import double_factorial, scaled_tail
from gheat.onesided import (
    moment_ladder,
    one_sided_moment,
    one_sided_moment_quad,
    scaled_moment,
    scaled_moment_ladder,
)


def scaled_quad(k: int, x: float) -> float:
    """Oracle: direct adaptive quadrature of int_0^inf u^k e^{-u^2/2 - xu} du."""
    val, _ = quad(
        lambda u: u**k * math.exp(-0.5 * u * u - x * u),
        0.0, np.inf, epsabs=0, epsrel=1e-12, limit=200,
    )
    return val


@pytest.mark.parametrize("x", [-25.0, -8.0, -2.0, -0.5, 0.0, 0.7, 1.3, 2.5, 4.0, 5.5, 8.0, 20.0, 200.0])
@pytest.mark.parametrize("k", [0, 1, 3, 7, 11, 13])
def test_scaled_ladder_matches_quadrature(k, x):
    assert scaled_moment(k, x) == pytest.approx(scaled_quad(k, x), rel=5e-12)


def test_ladder_recurrence_consistency():
    # consecutive entries must satisfy S_k = (k-1) S_{k-2} - x S_{k-1}
    # essentially to rounding, in every evaluation zone
    for x in (-5.0, 0.5, 2.0, 3.5, 7.0, 50.0):
        S = scaled_moment_ladder(13, x)
        for k in range(2, 14):
            lhs = S[k]
            rhs = (k - 1) * S[k - 2] - x * S[k - 1]
            scale = abs((k - 1) * S[k - 2]) + abs(x * S[k - 1])
            assert abs(lhs - rhs) <= 1e-14 * scale + 1e-300


def test_ladder_positive():
    xs = np.linspace(-20, 40, 121)
    S = scaled_moment_ladder(11, xs)
    assert np.all(S > 0.0)


def test_scaled_ladder_k0_is_scaled_tail():
    xs = np.array([-10.0, -1.0, 0.5, 3.0, 8.0, 100.0])
    S = scaled_moment_ladder(0, xs)
    assert np.allclose(S[0], scaled_tail(xs), rtol=1e-14)


def test_unscaled_matches_scaled_times_gaussian():
    for x in (-3.0, 0.2, 2.0, 6.0):
        for k in (1, 5, 9):
            expected = math.exp(-0.5 * x * x) * scaled_quad(k, x)
            assert one_sided_moment(k, x) == pytest.approx(expected, rel=5e-12)


def test_unscaled_far_left_no_overflow():
    # M_k(x) ~ sqrt(2*pi) E[(x+Z)^-]^k stays finite where the scaled form overflows
    val = one_sided_moment(3, -35.0)
    oracle = quad(
        lambda s: (s + 35.0) ** 3 * math.exp(-0.5 * s * s),
        -35.0, 40.0, epsabs=0, epsrel=1e-12,
    )[0]
    assert val == pytest.approx(oracle, rel=1e-11)


def test_moment_at_zero_closed_forms():
    # M_{2m+1}(0) = (2m)!!, M_{2m}(0) = (2m-1)!! sqrt(pi/2)
    for m in range(5):
        assert one_sided_moment(2 * m + 1, 0.0) == pytest.approx(
            double_factorial(2 * m), rel=1e-13
        )
        assert one_sided_moment(2 * m, 0.0) == pytest.approx(
            double_factorial(2 * m - 1) * math.sqrt(math.pi / 2), rel=1e-13
        )


def test_quad_route_matches_ladder():
    for x in (6.0, 8.0, 12.0):
        for k in (3, 7):
            assert one_sided_moment_quad(k, x) == pytest.approx(
                one_sided_moment(k, x), rel=1e-11
            )


def test_ladder_shapes():
    assert scaled_moment_ladder(5, 1.0).shape == (6,)
    assert scaled_moment_ladder(5, np.zeros((2, 3))).shape == (6, 2, 3)
    assert moment_ladder(3, np.zeros(4)).shape == (4, 4)
    with pytest.raises(ValueError):
        scaled_moment_ladder(-1, 1.0)
