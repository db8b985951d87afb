"""Pure-numpy kernels: explicit FD time stepping and controlled-diffusion
Monte Carlo paths.

This module and the compiled twin in ``_kernels.pyx`` implement exactly the
same arithmetic, in the same order, so their outputs are bit-identical; the
parity is asserted in the test suite.  Keep the two in sync.

Randomness is counter-based: the normal increment for (path p, step s) is

    ndtri( u(seed, p*steps + s) ),
    u(seed, c) = ((w >> 11) + 0.5) * 2^-53,
    w = mix64( mix64(seed ^ SALT) + (c+1) * GOLDEN ),

where mix64 is the splitmix64 finaliser.  Each draw is a pure function of
(seed, path, step), so results do not depend on how paths are batched or
scheduled across threads.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

BACKEND = "python"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SALT = 0x7A2E_5F1D_9C3B_8E67
_MASK64 = (1 << 64) - 1
_U53 = 2.0**-53


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _mix64_int(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def seed_key(seed: int) -> int:
    """Stream key derived from the user seed (python int, 64-bit)."""
    return _mix64_int((int(seed) & _MASK64) ^ _SALT)


def normals_for(seed: int, counters: np.ndarray) -> np.ndarray:
    """Standard normals for an array of uint64 counters."""
    key = np.uint64(seed_key(seed))
    w = _mix64(key + (counters + np.uint64(1)) * _GOLDEN)
    u = ((w >> np.uint64(11)).astype(np.float64) + 0.5) * _U53
    return ndtri(u)


def _intpow(x: np.ndarray, m: int) -> np.ndarray:
    """Binary exponentiation; mirrored exactly in the compiled kernel."""
    result = np.ones_like(x)
    base = x.copy()
    e = int(m)
    while e > 0:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def mc_payoffs(
    seed: int,
    path0: int,
    npaths: int,
    steps: int,
    x0: float,
    sqrt_dt: float,
    thresholds: np.ndarray,
    nu_above: float,
    nu_below: float,
    power: int,
) -> np.ndarray:
    """Terminal payoffs X_T^power for paths [path0, path0+npaths).

    Euler scheme X <- X + nu * sqrt_dt * xi with the volatility chosen per
    step: nu_above where X >= thresholds[s], else nu_below.  Constant
    policies pass nu_above == nu_below.
    """
    thresholds = np.asarray(thresholds, dtype=float)
    base = np.arange(path0, path0 + npaths, dtype=np.uint64) * np.uint64(steps)
    x = np.full(npaths, float(x0))
    for s in range(steps):
        xi = normals_for(seed, base + np.uint64(s))
        nu = np.where(x >= thresholds[s], nu_above, nu_below)
        x = x + nu * (sqrt_dt * xi)
    return _intpow(x, power)


def fd_evolve(
    u0: np.ndarray,
    sigma2: float,
    inv_dx2: float,
    dts: np.ndarray,
    boundary_lo: np.ndarray,
    boundary_hi: np.ndarray,
) -> np.ndarray:
    """Explicit monotone stepping of u_t = (1/2)((u_xx)^+ - sigma^2 (u_xx)^-).

    One step per entry of dts; boundary values after step s are pinned to
    boundary_lo[s] / boundary_hi[s].  Returns the final grid values.
    """
    u = np.array(u0, dtype=float)
    for s in range(len(dts)):
        d2 = (u[:-2] - 2.0 * u[1:-1] + u[2:]) * inv_dx2
        g = np.where(d2 > 0.0, d2, sigma2 * d2)
        u[1:-1] = u[1:-1] + (0.5 * dts[s]) * g
        u[0] = boundary_lo[s]
        u[-1] = boundary_hi[s]
    return u
