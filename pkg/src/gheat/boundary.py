"""Free-boundary constants of the self-similar G-heat profiles.

For volatility bounds [sigma, 1] with sigma in (0, 1), the profile built in
:mod:`gheat.profile` switches branch at a point c < 0 determined by

    f_n(x) = S_{2n-1}(-x/sigma) - sigma^(2n) * S_{2n-1}(x) = 0,

where S_k is the scaled one-sided moment from :mod:`gheat.onesided`
(this is the overflow-free rewrite of the C^2-matching condition:
S_{2n-1}(-x/sigma) = h_{n-1}(x/sigma) + g_{n-1}(x/sigma) scaled(-x/sigma)).
f_n is strictly increasing on x < 0 with f_n(0) > 0 and f_n(-inf) = -inf,
so the root is unique and a leftward-doubling bracket plus Brent's method
is globally convergent.  The remaining constants follow from the root:

    k = -(2n)!! g_{n-1}(c) / m_{n-1}(c)                  (moment constant)
    D = sigma * g_{n-1}(c/sigma)/g_{n-1}(c) * k * exp(-c^2/2)

D is the *scaled* lower-branch coefficient d * exp(-c^2/(2 sigma^2)); the
unscaled d overflows for small sigma and is never materialised.

In the degenerate case sigma = 0 the matching system becomes

    (2n-1)! = c^(2n) * S_{2n-1}(c),
    k = -(2n/(2n-1)!!) g_{n-1}(c) c^(2n) exp(c^2/2),

solved the same way (here psi(c) = c^(2n) S_{2n-1}(c) decreases to 0 as
c -> 0^- and blows up as c -> -inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .gaussians import double_factorial
from .onesided import one_sided_moment, scaled_moment
from .polys import g_poly

X_FLOOR = -30.0  # exp(x^2/2) must stay representable
_BRENT_RTOL = 4 * np.finfo(float).eps


class BracketError(RuntimeError):
    """No sign change found before the search floor."""


class ConvergenceError(RuntimeError):
    """Root accepted by the iteration but residual above tolerance."""


@dataclass(frozen=True)
class FreeBoundary:
    """Solved matching constants for one (n, sigma).

    c         free boundary of the self-similar profile, always < 0
    k         moment constant (value of the odd moment at t = 1), always > 0
    d_scaled  lower-branch coefficient in scaled form d*exp(-c^2/(2 sigma^2));
              None for sigma = 0 where the lower branch is x^(2n+1)
    residual  f_n(c) for sigma > 0; relative system residual
              c^(2n) S_{2n-1}(c)/(2n-1)! - 1 for sigma = 0
    """

    n: int
    sigma: float
    c: float
    k: float
    d_scaled: float | None
    residual: float
    iterations: int


def f_fn(n: int, sigma: float, x) -> float:
    """Matching function f_n; strictly increasing for x < 0, f_n(0) > 0."""
    _check_n(n)
    if not (0.0 < sigma < 1.0):
        raise ValueError("sigma must lie in (0, 1)")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < X_FLOOR):
        raise ValueError(f"x must be >= {X_FLOOR} (overflow guard)")
    k = 2 * n - 1
    out = scaled_moment(k, -xa / sigma) - sigma ** (2 * n) * scaled_moment(k, xa)
    return float(out) if np.ndim(x) == 0 else out


def _check_n(n: int) -> None:
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")


def _polish(fn, x: float) -> tuple[float, float, int]:
    """Nudge a converged root by a few ulps to minimise |fn|."""
    step = np.spacing(abs(x))
    best_x, best_f, extra = x, fn(x), 0
    for j in (-3, -2, -1, 1, 2, 3):
        xj = x + j * step
        if xj >= 0.0:
            continue
        fj = fn(xj)
        extra += 1
        if abs(fj) < abs(best_f):
            best_x, best_f = xj, fj
    return best_x, best_f, extra


def _bracket_and_solve(fn, lo0: float, expand_while_positive: bool, tol: float):
    """Double leftward from lo0 until the sign flips, then Brent + polish."""
    hi = 0.0
    lo = lo0
    while (fn(lo) > 0.0) == expand_while_positive:
        hi = lo
        lo *= 2.0
        if lo < X_FLOOR:
            raise BracketError(f"no sign change found in [{X_FLOOR}, 0)")
    root, info = brentq(
        fn, lo, hi, xtol=1e-15, rtol=_BRENT_RTOL, maxiter=200, full_output=True
    )
    if not info.converged:
        raise ConvergenceError("Brent iteration did not converge")
    root, resid, extra = _polish(fn, root)
    if abs(resid) > tol:
        raise ConvergenceError(
            f"residual {resid:.3e} above tolerance {tol:.1e} after convergence"
        )
    return root, resid, info.iterations + extra


def solve_free_boundary(n: int, sigma: float, tol: float = 1e-12) -> FreeBoundary:
    """Solve the sigma in (0,1) matching system for (c, k, D)."""
    _check_n(n)
    n = int(n)
    if not (0.0 < sigma < 1.0):
        raise ValueError("sigma must lie in (0, 1)")
    if tol <= 0:
        raise ValueError("tol must be positive")

    fn = lambda x: f_fn(n, sigma, x)
    c, resid, iters = _bracket_and_solve(fn, -1.0, expand_while_positive=True, tol=tol)

    gm1 = g_poly(n - 1)
    m_at_c = one_sided_moment(2 * n - 1, c)
    k = -double_factorial(2 * n) * gm1(c) / m_at_c
    d_scaled = sigma * gm1(c / sigma) / gm1(c) * k * math.exp(-0.5 * c * c)

    fb = FreeBoundary(
        n=n, sigma=float(sigma), c=c, k=k, d_scaled=d_scaled,
        residual=resid, iterations=iters,
    )
    _sanity(fb)
    return fb


def solve_free_boundary_degenerate(n: int, tol: float = 1e-12) -> FreeBoundary:
    """Solve the sigma = 0 system; residual is relative to (2n-1)!."""
    _check_n(n)
    n = int(n)
    if tol <= 0:
        raise ValueError("tol must be positive")
    fact = math.factorial(2 * n - 1)

    def rel_resid(c: float) -> float:
        return c ** (2 * n) * scaled_moment(2 * n - 1, c) / fact - 1.0

    # rel_resid < 0 near 0^-, > 0 far left; root search mirrors the generic one
    c, resid, iters = _bracket_and_solve(
        rel_resid, -0.5, expand_while_positive=False, tol=tol
    )

    gm1 = g_poly(n - 1)
    k = (
        -(2 * n / double_factorial(2 * n - 1))
        * gm1(c)
        * c ** (2 * n)
        * math.exp(0.5 * c * c)
    )
    fb = FreeBoundary(
        n=n, sigma=0.0, c=c, k=k, d_scaled=None, residual=resid, iterations=iters
    )
    _sanity(fb)
    return fb


def _sanity(fb: FreeBoundary) -> None:
    if not (fb.c < 0.0):
        raise ConvergenceError(f"free boundary must be negative, got c={fb.c}")
    if not (fb.k > 0.0):
        raise ConvergenceError(f"moment constant must be positive, got k={fb.k}")
    if fb.d_scaled is not None and not math.isfinite(fb.d_scaled):
        raise ConvergenceError("scaled lower-branch coefficient overflowed")


@lru_cache(maxsize=256)
def cached_boundary(n: int, sigma: float) -> FreeBoundary:
    """Memoised solve; sigma = 0 dispatches to the degenerate system."""
    if sigma == 0.0:
        return solve_free_boundary_degenerate(n)
    return solve_free_boundary(n, sigma)


def l_fn(n: int, x: float) -> float:
    """l_n(x) = tail(x) - h_{n-1}(x)/g_{n-1}(x) * exp(-x^2/2) for x < 0.

    Strictly increasing with l_n(0^-) = +inf; ties the moment constant to
    the root through k = (2n)!!/l_n(c).
    """
    from .gaussians import gaussian_tail
    from .polys import h_poly

    _check_n(n)
    xa = np.asarray(x, dtype=float)
    if np.any(xa >= 0.0):
        raise ValueError("x must be negative")
    out = gaussian_tail(xa) - h_poly(n - 1)(xa) / g_poly(n - 1)(xa) * np.exp(
        -0.5 * np.square(xa)
    )
    return float(out) if np.ndim(x) == 0 else out


def boundary_scan(n: int, sigmas: Sequence[float], tol: float = 1e-12) -> list[FreeBoundary]:
    """Solve for each sigma of a strictly ascending scan in (0, 1)."""
    _check_n(n)
    sig = [float(s) for s in sigmas]
    if any(not (0.0 < s < 1.0) for s in sig):
        raise ValueError("scan values must lie in (0, 1)")
    if any(b <= a for a, b in zip(sig, sig[1:])):
        raise ValueError("scan values must be strictly ascending")
    return [solve_free_boundary(n, s, tol=tol) for s in sig]
