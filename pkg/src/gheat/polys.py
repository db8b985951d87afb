"""The polynomial pair (g_n, h_n) behind the one-sided Gaussian moments.

For every integer n >= 0 there is an odd monic polynomial g_n of degree
2n+1 and an even monic polynomial h_n of degree 2n such that

    g_n(x) = E[(x + Z)^(2n+1)]                       (Z standard normal)
    m_n(x) = h_n(x) exp(-x^2/2) - g_n(x) tail(x)
           = sqrt(2*pi) * E[ ((x + Z)^-)^(2n+1) ]  >= 0,

i.e. g_n and m_n are the growing and decaying solutions of the linear ODE
y'' + x y' - (2n+1) y = 0.  Explicitly

    g_n(x) = sum_{i=0}^{n} (2n+1)! / ((2(n-i))!! (2i+1)!) x^(2i+1)
    h_n(x) = sum_{i=0}^{n} (n+i)!(n-i)! / ((2(n-i))!! (2i)!)
             * (C(2n+1,0) + ... + C(2n+1,n-i)) x^(2i).

Coefficients are kept as exact rationals; the two algebraic identities
tying consecutive pairs together (see pair_identities) are checked in
exact arithmetic, which is the strongest possible construction test.
The pair also yields two-sided Mills-ratio bounds for the Gaussian tail
(mills_bounds) and the asymptotics of the left tail (left_asymptote).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gaussians import double_factorial, gaussian_tail, SQRT_TWO_PI
from .onesided import one_sided_moment, one_sided_moment_quad, scaled_moment

M_QUAD_THRESHOLD = 6.0


class RationalPoly:
    """Polynomial with exact Fraction coefficients and a fixed parity.

    coeffs[d] is the coefficient of x^d; entries outside the declared
    parity must be zero.  Float evaluation uses Horner's scheme on the
    parity-compressed coefficients in the variable x^2.
    """

    __slots__ = ("coeffs", "parity", "_fc")

    def __init__(self, coeffs, parity: str):
        if parity not in ("odd", "even"):
            raise ValueError("parity must be 'odd' or 'even'")
        coeffs = tuple(Fraction(c) for c in coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        off = 1 if parity == "odd" else 0
        for d, c in enumerate(coeffs):
            if c != 0 and d % 2 != off:
                raise ValueError(f"coefficient of x^{d} violates {parity} parity")
        self.coeffs = coeffs
        self.parity = parity
        # compressed float coefficients, ascending in x^2
        self._fc = np.array([float(c) for c in coeffs[off::2]] or [0.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        z = np.square(x)
        acc = np.full_like(z, self._fc[-1])
        for c in self._fc[-2::-1]:
            acc = acc * z + c
        if self.parity == "odd":
            acc = acc * x
        return float(acc) if acc.ndim == 0 else acc

    def derivative(self) -> "RationalPoly":
        dc = [d * c for d, c in enumerate(self.coeffs)][1:] or [Fraction(0)]
        return RationalPoly(dc, "even" if self.parity == "odd" else "odd")

    def _full(self, n: int):
        return list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self._full(n) == other._full(n)

    def __hash__(self):
        return hash((self.coeffs, self.parity))

    def __repr__(self):
        terms = [f"{c}*x^{d}" for d, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@lru_cache(maxsize=None)
def g_poly(n: int) -> RationalPoly:
    """The odd polynomial g_n(x) = E[(x+Z)^(2n+1)], degree 2n+1, monic."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    n = int(n)
    coeffs = [Fraction(0)] * (2 * n + 2)
    for i in range(n + 1):
        num = math.factorial(2 * n + 1)
        den = double_factorial(2 * (n - i)) * math.factorial(2 * i + 1)
        coeffs[2 * i + 1] = Fraction(num, den)
    return RationalPoly(coeffs, "odd")


@lru_cache(maxsize=None)
def h_poly(n: int) -> RationalPoly:
    """The even companion polynomial h_n, degree 2n, monic, h_n(0) = (2n)!!."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    n = int(n)
    coeffs = [Fraction(0)] * (2 * n + 1)
    for i in range(n + 1):
        partial = sum(math.comb(2 * n + 1, j) for j in range(n - i + 1))
        num = math.factorial(n + i) * math.factorial(n - i) * partial
        den = double_factorial(2 * (n - i)) * math.factorial(2 * i)
        coeffs[2 * i] = Fraction(num, den)
    return RationalPoly(coeffs, "even")


def m_fn(n: int, x: float) -> float:
    """m_n(x) = h_n(x) exp(-x^2/2) - g_n(x) tail(x)  (always >= 0).

    The closed form cancels catastrophically for large positive x, so
    beyond x = 6 the integral representation
    m_n(x) = int_x^inf (s-x)^(2n+1) exp(-s^2/2) ds is integrated
    adaptively instead.
    """
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    k = 2 * int(n) + 1
    if x >= M_QUAD_THRESHOLD:
        return one_sided_moment_quad(k, float(x))
    return one_sided_moment(k, float(x))


@dataclass(frozen=True)
class PairIdentityReport:
    """Outcome of the two exact polynomial identities at level n.

    cross:      h_{n-1} g_n - g_{n-1} h_n            == (2n-1)! * x
    wronskian:  h_{n-1} g'_{n-1} + x h_{n-1} g_{n-1}
                - h'_{n-1} g_{n-1} - g_{n-1}^2       == (2n-1)!
    """

    n: int
    cross: bool
    wronskian: bool

    @property
    def all_pass(self) -> bool:
        return self.cross and self.wronskian


def pair_identities(n: int) -> PairIdentityReport:
    """Verify the two construction identities in exact rational arithmetic.

    A failure means the coefficient formulas are wrong, so it raises
    rather than returning quietly.
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    n = int(n)
    fact = Fraction(math.factorial(2 * n - 1))
    gm1, hm1 = g_poly(n - 1), h_poly(n - 1)
    gn, hn = g_poly(n), h_poly(n)

    lhs = _poly_sub(
        _poly_mul(list(hm1.coeffs), list(gn.coeffs)),
        _poly_mul(list(gm1.coeffs), list(hn.coeffs)),
    )
    cross = lhs == [Fraction(0), fact] + [Fraction(0)] * (len(lhs) - 2)

    x_poly = [Fraction(0), Fraction(1)]
    h, g = list(hm1.coeffs), list(gm1.coeffs)
    hd, gd = list(hm1.derivative().coeffs), list(gm1.derivative().coeffs)
    lhs2 = _poly_add(_poly_mul(h, gd), _poly_mul(x_poly, _poly_mul(h, g)))
    lhs2 = _poly_sub(lhs2, _poly_add(_poly_mul(hd, g), _poly_mul(g, g)))
    wronskian = lhs2 == [fact] + [Fraction(0)] * (len(lhs2) - 1)

    report = PairIdentityReport(n=n, cross=cross, wronskian=wronskian)
    if not report.all_pass:
        raise AssertionError(f"polynomial pair identities violated at n={n}: {report}")
    return report


@dataclass(frozen=True)
class BoundReport:
    """Two-sided polynomial bounds for tail(x) at a given (n, x).

    lower <= tail <= upper, with explicit bounds on both gaps.
    """

    n: int
    x: float
    lower: float
    tail: float
    upper: float
    lower_gap_bound: float
    upper_gap_bound: float


def mills_bounds(n: int, x: float) -> BoundReport:
    """Sandwich the Gaussian tail between rational functions of the pair:

        (h'_{n-1} + g_{n-1}) / (g'_{n-1} + x g_{n-1}) * exp(-x^2/2)
            <= tail(x) <=  h_n / g_n * exp(-x^2/2),   x > 0,

    together with the explicit gap bounds (the upper gap bound is vacuous,
    i.e. +inf, at n = 1).  Both bounds tighten monotonically in n.
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if not (x > 0):
        raise ValueError("x must be positive")
    n = int(n)
    x = float(x)
    gm1, hm1 = g_poly(n - 1), h_poly(n - 1)
    ex = math.exp(-0.5 * x * x)
    lower = (hm1.derivative()(x) + gm1(x)) / (gm1.derivative()(x) + x * gm1(x)) * ex
    upper = h_poly(n)(x) / g_poly(n)(x) * ex

    lower_gap = min(
        SQRT_TWO_PI
        * math.factorial(2 * k)
        * math.factorial(n - k)
        / (x ** (2 * k) * 2 ** (3 * k) * math.factorial(n))
        for k in range(1, n + 1)
    )
    if n >= 2:
        upper_gap = min(
            SQRT_TWO_PI
            * math.factorial(2 * k + 1)
            * math.factorial(2 * (n - k) - 1)
            * math.factorial(n)
            / (2**k * x ** (2 * (k + 1)) * math.factorial(2 * n) * math.factorial(n - k - 1))
            for k in range(1, n)
        )
    else:
        upper_gap = math.inf

    return BoundReport(
        n=n,
        x=x,
        lower=lower,
        tail=gaussian_tail(x),
        upper=upper,
        lower_gap_bound=lower_gap,
        upper_gap_bound=upper_gap,
    )


def left_asymptote(n: int, x: float) -> float:
    """x^(2n) * [h_{n-1}(x) + g_{n-1}(x) * scaled(-x)] for x < 0.

    The bracket equals exp(x^2/2) * m_{n-1}(-x), so the whole expression
    tends to (2n-1)! as x -> -inf.
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if not (x < 0):
        raise ValueError("x must be negative")
    n = int(n)
    x = float(x)
    return x ** (2 * n) * scaled_moment(2 * n - 1, -x)
