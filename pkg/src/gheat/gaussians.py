"""Gaussian tail integrals and classical Gaussian moments.

Everything here is phrased in terms of the unnormalised tail

    tail(x) = int_x^inf exp(-t^2/2) dt,

its overflow-safe companion scaled(x) = exp(x^2/2) * tail(x) (the Mills
ratio), and moments of a standard normal Z.  These are the only special
functions the rest of the package needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcx

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
SQRT_HALF_PI = math.sqrt(0.5 * math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _check_finite(x) -> None:
    if not np.all(np.isfinite(x)):
        raise ValueError("argument must be finite")


def gaussian_tail(x):
    """tail(x) = int_x^inf exp(-t^2/2) dt.

    Equals sqrt(2*pi) * P(Z > x).  Accepts scalars or arrays; relative
    accuracy ~1e-15 (inherited from erfc), underflows to 0 for x >~ 38.6.
    """
    x = np.asarray(x, dtype=float)
    _check_finite(x)
    out = SQRT_HALF_PI * erfc(x * _INV_SQRT2)
    return float(out) if out.ndim == 0 else out


def scaled_tail(x):
    """exp(x^2/2) * tail(x), the Mills ratio of the standard normal.

    Safe for large positive x where tail(x) underflows; overflows only
    for x below about -38 where exp(x^2/2) itself is unrepresentable.
    """
    x = np.asarray(x, dtype=float)
    _check_finite(x)
    out = SQRT_HALF_PI * erfcx(x * _INV_SQRT2)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class TailValue:
    """A tail integral together with its scaled (overflow-safe) form."""

    x: float
    tail: float
    scaled: float


def tail_pair(x: float) -> TailValue:
    """Both tail(x) and scaled(x) evaluated consistently at one point."""
    return TailValue(x=float(x), tail=gaussian_tail(x), scaled=scaled_tail(x))


def double_factorial(k: int) -> int:
    """k!! with the empty-product convention for k <= 0."""
    if k <= 0:
        return 1
    return math.prod(range(k, 0, -2))


def abs_moment(m: int) -> float:
    """E|Z|^m for standard normal Z and integer m >= 0.

    (m-1)!! for even m, sqrt(2/pi) * (m-1)!! for odd m.
    """
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    m = int(m)
    dd = double_factorial(m - 1)
    if m % 2 == 0:
        return float(dd)
    return math.sqrt(2.0 / math.pi) * dd


def classical_shifted_moment(m: int, x, s):
    """E[(x + s*Z)^m] for standard normal Z, s >= 0.

    Binomial expansion using E[Z^(2j)] = (2j-1)!!; exact (up to rounding)
    for any integer m >= 0.  x and s may be scalars or broadcastable arrays.
    """
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    m = int(m)
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("s must be nonnegative")
    out = np.zeros(np.broadcast(x, s).shape)
    for j in range(0, m // 2 + 1):
        coef = math.comb(m, 2 * j) * double_factorial(2 * j - 1)
        out = out + coef * x ** (m - 2 * j) * s ** (2 * j)
    return float(out) if out.ndim == 0 else out
