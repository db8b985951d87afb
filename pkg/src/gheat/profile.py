"""Self-similar profiles and solutions of the G-heat equation.

The equation is

    u_t = (1/2) ((u_xx)^+ - sigma^2 (u_xx)^-),    u(0, x) = x^(2n+1),

with volatility band [sigma, 1].  Its solution is self-similar,
u(t, x) = t^(n+1/2) P(x / sqrt(t)), where P solves the matching ODE

    (P'')^+ - sigma^2 (P'')^- + x P' - (2n+1) P = 0.

P is assembled from the polynomial pair (g_n, h_n) and the one-sided
moments M_k / S_k:

  upper branch (x >= c):  P = g_n(x) + (k/(2n)!!) M_{2n+1}(x)
  lower branch (x <  c):  sigma in (0,1):
      P = sigma^(2n+1) g_n(y) + (D/(2n)!!) e^((yc^2-y^2)/2) S_{2n+1}(-y),
      y = x/sigma, yc = c/sigma
                          sigma = 0:  P = x^(2n+1)
  sigma = 1:  P = g_n everywhere (classical heat kernel moment).

Derivatives reuse the ladder structure: M_k'' maps down two orders, so
P'' on the upper branch is (2n+1)(2n) [g_{n-1} + (k/(2n)!!) M_{2n-1}],
with the analogous scaled expression below the boundary.  All branch
coefficients come from :mod:`gheat.boundary`, and the same moment-ladder
evaluator is shared with the root solve, so the C^2 matching holds to
rounding by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import FreeBoundary, cached_boundary
from .gaussians import classical_shifted_moment, double_factorial
from .onesided import moment_ladder, scaled_moment_ladder
from .polys import RationalPoly, g_poly


@dataclass(frozen=True)
class Profile:
    """Immutable, evaluation-ready self-similar profile for one (n, sigma)."""

    n: int
    sigma: float
    fb: FreeBoundary | None
    _gn: RationalPoly = field(repr=False)
    _gn_d: RationalPoly = field(repr=False)
    _gm1: RationalPoly = field(repr=False)

    @property
    def c(self) -> float:
        return self.fb.c if self.fb is not None else -math.inf


def build_profile(n: int, sigma: float) -> Profile:
    """Solve the free boundary (if any) and cache polynomial evaluators."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if not (0.0 <= sigma <= 1.0):
        raise ValueError("sigma must lie in [0, 1]")
    n = int(n)
    fb = None if sigma == 1.0 else cached_boundary(n, float(sigma))
    gn = g_poly(n)
    return Profile(
        n=n, sigma=float(sigma), fb=fb,
        _gn=gn, _gn_d=gn.derivative(), _gm1=g_poly(n - 1),
    )


_profile_cache: dict[tuple[int, float], Profile] = {}


def profile_for(n: int, sigma: float) -> Profile:
    key = (int(n), float(sigma))
    prof = _profile_cache.get(key)
    if prof is None:
        prof = _profile_cache[key] = build_profile(n, sigma)
    return prof


def eval_profile(p: Profile, x, order: int = 0):
    """P, P' or P'' at x (scalar or array) by analytic differentiation."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    n, sigma = p.n, p.sigma
    shape = np.shape(x)
    xf = np.asarray(x, dtype=float).ravel()
    out = np.empty_like(xf)
    two_np1 = 2 * n + 1
    dd = double_factorial(2 * n)

    if sigma == 1.0:
        up = np.ones(xf.shape, dtype=bool)
    else:
        up = xf >= p.fb.c

    if np.any(up):
        xu = xf[up]
        M = moment_ladder(two_np1, xu)
        kap = 0.0 if p.fb is None else p.fb.k / dd
        if order == 0:
            out[up] = p._gn(xu) + kap * M[two_np1]
        elif order == 1:
            out[up] = p._gn_d(xu) - kap * two_np1 * M[2 * n]
        else:
            out[up] = two_np1 * (2 * n) * (p._gm1(xu) + kap * M[2 * n - 1])

    lo = ~up
    if np.any(lo):
        xl = xf[lo]
        if sigma == 0.0:
            if order == 0:
                out[lo] = xl**two_np1
            elif order == 1:
                out[lo] = two_np1 * xl ** (2 * n)
            else:
                out[lo] = two_np1 * (2 * n) * xl ** (2 * n - 1)
        else:
            y = xl / sigma
            yc = p.fb.c / sigma
            S = scaled_moment_ladder(two_np1, -y)
            damp = np.exp(0.5 * (yc * yc - np.square(y)))
            dkap = p.fb.d_scaled / dd
            if order == 0:
                out[lo] = sigma**two_np1 * p._gn(y) + dkap * damp * S[two_np1]
            elif order == 1:
                out[lo] = (
                    sigma ** (2 * n) * p._gn_d(y)
                    + dkap * two_np1 / sigma * damp * S[2 * n]
                )
            else:
                out[lo] = (
                    two_np1
                    * (2 * n)
                    * (
                        sigma ** (2 * n - 1) * p._gm1(y)
                        + dkap / (sigma * sigma) * damp * S[2 * n - 1]
                    )
                )

    return float(out[0]) if shape == () else out.reshape(shape)


def ode_residual(p: Profile, x):
    """(P'')^+ - sigma^2 (P'')^- + x P' - (2n+1) P, evaluated analytically."""
    d2 = eval_profile(p, x, 2)
    d1 = eval_profile(p, x, 1)
    d0 = eval_profile(p, x, 0)
    xa = np.asarray(x, dtype=float)
    nonlin = np.where(d2 > 0.0, d2, p.sigma * p.sigma * d2)
    out = nonlin + xa * d1 - (2 * p.n + 1) * d0
    return float(out) if np.ndim(x) == 0 else out


def eval_solution(n: int, sigma: float, t, x, profile: Profile | None = None):
    """u(t, x) = t^(n+1/2) P(x/sqrt(t)); u(0, x) = x^(2n+1) exactly."""
    p = profile if profile is not None else profile_for(n, sigma)
    t_arr = np.asarray(t, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be nonnegative")
    if t_arr.ndim == 0 and x_arr.ndim >= 0:
        if float(t_arr) == 0.0:
            out = x_arr ** (2 * p.n + 1)
            return float(out) if out.ndim == 0 else out
        rt = math.sqrt(float(t_arr))
        out = float(t_arr) ** (p.n + 0.5) * eval_profile(p, x_arr / rt, 0)
        return out
    # array t: evaluate elementwise with the t = 0 trace handled exactly
    t_b, x_b = np.broadcast_arrays(t_arr, x_arr)
    out = np.empty(t_b.shape)
    zero = t_b == 0.0
    if np.any(zero):
        out[zero] = x_b[zero] ** (2 * p.n + 1)
    pos = ~zero
    if np.any(pos):
        tp, xp = t_b[pos], x_b[pos]
        out[pos] = tp ** (p.n + 0.5) * eval_profile(p, xp / np.sqrt(tp), 0)
    return out


def odd_moment(n: int, sigma: float, t) -> float:
    """The odd-power sublinear moment k_n * t^(n+1/2); zero when sigma = 1.

    Strictly positive for sigma < 1: the band of volatilities can be
    steered to favour the convex side, unlike a single Brownian motion.
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if not (0.0 <= sigma <= 1.0):
        raise ValueError("sigma must lie in [0, 1]")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0):
        raise ValueError("t must be positive")
    if sigma == 1.0:
        out = np.zeros_like(t_arr)
    else:
        out = cached_boundary(int(n), float(sigma)).k * t_arr ** (n + 0.5)
    return float(out) if out.ndim == 0 else out


def g_expectation_monomial(m: int, sigma: float, t, x):
    """Sublinear expectation of (x + B_t)^m over the volatility band.

    Even m is convex, so the classical unit-volatility moment is attained;
    m = 1 is linear; odd m >= 3 uses the free-boundary solution.
    """
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    m = int(m)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be nonnegative")
    if m % 2 == 0:
        return classical_shifted_moment(m, x, np.sqrt(t_arr))
    if m == 1:
        x_arr = np.asarray(x, dtype=float)
        out = np.broadcast_arrays(x_arr, t_arr)[0]
        return float(out) if np.ndim(x) == 0 and np.ndim(t) == 0 else out.copy()
    return eval_solution((m - 1) // 2, sigma, t, x)


def reflected_solution(n: int, sigma: float, t, x):
    """u(t, -x): solves the mirrored problem with initial data -x^(2n+1)
    (up to overall sign convention)."""
    return eval_solution(n, sigma, t, np.negative(x))


def constant_control_lower_bound(
    m: int, sigma: float, t: float, x: float, grid_size: int = 33
) -> float:
    """max over constant volatilities nu in [sigma, 1] of E[(x + nu B_t)^m].

    Always a lower bound for the sublinear expectation; strict for odd
    m >= 3 with sigma < 1, where no constant control is optimal.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    nus = np.linspace(sigma, 1.0, grid_size)
    vals = classical_shifted_moment(m, float(x), nus * math.sqrt(t))
    return float(np.max(vals))


def finance_log_moment(m: int, sigma: float, mu: float, T: float) -> float:
    """Worst-case n-th moment of log S_T when d log S = mu dt + nu_t dB,
    nu_t in [sigma, 1]: equals the sublinear moment of (mu*T + B_T)^m."""
    if T <= 0:
        raise ValueError("T must be positive")
    return float(g_expectation_monomial(m, sigma, T, mu * T))
