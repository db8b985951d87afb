"""One-sided Gaussian moment integrals.

The central objects are, for integer k >= 0,

    M_k(x) = int_x^inf (s - x)^k exp(-s^2/2) ds
           = sqrt(2*pi) * E[ ((x + Z)^-)^k ]
    S_k(x) = exp(x^2/2) * M_k(x) = int_0^inf u^k exp(-u^2/2 - x*u) du.

Both satisfy the three-term recurrence

    M_k = (k-1) * M_{k-2} - x * M_{k-1},      k >= 2,

with M_0 = tail(x) and M_1 = exp(-x^2/2) - x*tail(x).  The recurrence is
a pure sum of positives when run forward for x <= 0 and when run backward
for x > 0, which dictates the evaluation strategy:

  * x <= X_FORWARD: forward recurrence from the exact seeds;
  * x > X_FORWARD:  seed the two topmost orders (adaptive quadrature for
    moderate x, generalized Gauss-Laguerre for x >= X_LAGUERRE, a two-term
    asymptotic expansion for huge x), recur downward, and renormalise so
    the k = 0 entry matches scaled_tail(x) exactly.

Evaluations for consecutive k always come from one ladder, so they satisfy
the recurrence to machine precision; downstream identities (ODE residuals,
free-boundary matching) rely on that consistency.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_genlaguerre

from .gaussians import gaussian_tail, scaled_tail

X_FORWARD = 1.0
X_LAGUERRE = 5.0
X_ASYMPTOTIC = 1.0e8
_LAGUERRE_ORDER = 80

_lag_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _laguerre_rule(k: int) -> tuple[np.ndarray, np.ndarray]:
    rule = _lag_cache.get(k)
    if rule is None:
        rule = roots_genlaguerre(_LAGUERRE_ORDER, k)
        _lag_cache[k] = rule
    return rule


def _seed_laguerre(k: int, x: np.ndarray) -> np.ndarray:
    # S_k(x) = x^-(k+1) * int v^k e^-v * exp(-v^2/(2 x^2)) dv
    v, w = _laguerre_rule(k)
    vals = w @ np.exp(-0.5 * np.square(v[:, None] / x[None, :]))
    return vals / x ** (k + 1)


def _seed_asymptotic(k: int, x: np.ndarray) -> np.ndarray:
    # Watson-lemma expansion; next omitted term is O(k^4 / x^4) relative.
    lead = math.factorial(k) / x ** (k + 1)
    return lead * (1.0 - 0.5 * (k + 1) * (k + 2) / np.square(x))


@lru_cache(maxsize=1 << 16)
def _seed_quad(k: int, x: float) -> float:
    # sweeps hit the same (k, x) seeds once per derivative order
    val, _ = quad(
        lambda u: u**k * math.exp(-0.5 * u * u - x * u),
        0.0,
        np.inf,
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    return val


def scaled_moment_ladder(kmax: int, x) -> np.ndarray:
    """S_0(x) .. S_kmax(x) as an array of shape (kmax+1,) + x.shape.

    Requires x > -38 or so; below that exp(x^2/2) is unrepresentable and
    the entries overflow to inf.
    """
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    shape = np.shape(x)
    flat = np.asarray(x, dtype=float).ravel()
    out = np.empty((kmax + 2, flat.size))

    fwd = flat <= X_FORWARD
    if np.any(fwd):
        xf = flat[fwd]
        st = scaled_tail(xf)
        out[0, fwd] = st
        out[1, fwd] = 1.0 - xf * st
        for k in range(2, kmax + 2):
            out[k, fwd] = (k - 1) * out[k - 2, fwd] - xf * out[k - 1, fwd]

    bwd = ~fwd
    if np.any(bwd):
        xb = flat[bwd]
        top = np.empty((2, xb.size))
        big = xb >= X_ASYMPTOTIC
        lag = (xb >= X_LAGUERRE) & ~big
        mid = ~big & ~lag
        for row, k in ((0, kmax), (1, kmax + 1)):
            if np.any(big):
                top[row, big] = _seed_asymptotic(k, xb[big])
            if np.any(lag):
                top[row, lag] = _seed_laguerre(k, xb[lag])
            if np.any(mid):
                top[row, mid] = [_seed_quad(k, float(v)) for v in xb[mid]]
        sub = np.empty((kmax + 2, xb.size))
        sub[kmax], sub[kmax + 1] = top
        for k in range(kmax + 1, 1, -1):
            sub[k - 2] = (sub[k] + xb * sub[k - 1]) / (k - 1)
        sub *= scaled_tail(xb) / sub[0]
        out[:, bwd] = sub

    return out[: kmax + 1].reshape((kmax + 1,) + shape)


def moment_ladder(kmax: int, x) -> np.ndarray:
    """M_0(x) .. M_kmax(x); unscaled, valid on the whole real line."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    shape = np.shape(x)
    flat = np.asarray(x, dtype=float).ravel()
    out = np.empty((kmax + 1, flat.size))

    neg = flat <= 0.0
    if np.any(neg):
        # forward recurrence on the unscaled values: positives only.
        xf = flat[neg]
        out[0, neg] = gaussian_tail(xf)
        if kmax >= 1:
            out[1, neg] = np.exp(-0.5 * np.square(xf)) - xf * out[0, neg]
        for k in range(2, kmax + 1):
            out[k, neg] = (k - 1) * out[k - 2, neg] - xf * out[k - 1, neg]

    pos = ~neg
    if np.any(pos):
        xp = flat[pos]
        out[:, pos] = scaled_moment_ladder(kmax, xp) * np.exp(-0.5 * np.square(xp))

    return out.reshape((kmax + 1,) + shape)


def scaled_moment(k: int, x):
    """S_k(x) for a single order k."""
    out = scaled_moment_ladder(k, x)[k]
    return float(out) if np.ndim(x) == 0 else out


def one_sided_moment(k: int, x):
    """M_k(x) for a single order k."""
    out = moment_ladder(k, x)[k]
    return float(out) if np.ndim(x) == 0 else out


def one_sided_moment_quad(k: int, x: float) -> float:
    """Adaptive-quadrature evaluation of M_k(x), factored as
    exp(-x^2/2) * S_k(x) so nothing overflows; used as the independent
    route for large positive x and as a cross-check oracle."""
    return math.exp(-0.5 * x * x) * _seed_quad(k, x)
