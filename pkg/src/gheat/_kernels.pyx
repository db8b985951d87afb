# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: must stay arithmetic-identical to _kernels_py.py.

Compiled with -ffp-contract=off so the floating-point evaluation order
matches numpy exactly; the test suite asserts bit-identical outputs.
"""

import numpy as np

cimport cython
from libc.stdint cimport uint64_t, int64_t
from scipy.special.cython_special cimport ndtri

BACKEND = "native"

cdef extern from *:
    """
    static const uint64_t GHEAT_GOLDEN = 0x9E3779B97F4A7C15ULL;
    static const uint64_t GHEAT_MIX1   = 0xBF58476D1CE4E5B9ULL;
    static const uint64_t GHEAT_MIX2   = 0x94D049BB133111EBULL;
    static const uint64_t GHEAT_SALT   = 0x7A2E5F1D9C3B8E67ULL;
    """
    uint64_t GHEAT_GOLDEN
    uint64_t GHEAT_MIX1
    uint64_t GHEAT_MIX2
    uint64_t GHEAT_SALT


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * GHEAT_MIX1
    z = (z ^ (z >> 27)) * GHEAT_MIX2
    return z ^ (z >> 31)


def seed_key(seed):
    return int(_mix64((<uint64_t> (int(seed) & 0xFFFFFFFFFFFFFFFF)) ^ GHEAT_SALT))


cdef inline double _normal_at(uint64_t key, uint64_t counter) nogil:
    cdef uint64_t w = _mix64(key + (counter + 1) * GHEAT_GOLDEN)
    cdef double u = (<double> (w >> 11) + 0.5) * (1.0 / 9007199254740992.0)
    return ndtri(u)


def normals_for(seed, counters):
    """Standard normals for an array of uint64 counters (parity helper)."""
    cdef uint64_t key = <uint64_t> seed_key(seed)
    cdef uint64_t[::1] c = np.ascontiguousarray(counters, dtype=np.uint64)
    out_arr = np.empty(c.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(c.shape[0]):
        out[i] = _normal_at(key, c[i])
    return out_arr


def mc_payoffs(
    seed,
    int64_t path0,
    int64_t npaths,
    int64_t steps,
    double x0,
    double sqrt_dt,
    thresholds,
    double nu_above,
    double nu_below,
    int power,
):
    """Terminal payoffs X_T^power for paths [path0, path0+npaths)."""
    cdef uint64_t key = <uint64_t> seed_key(seed)
    cdef double[::1] thr = np.ascontiguousarray(thresholds, dtype=np.float64)
    if thr.shape[0] < steps:
        raise ValueError("thresholds shorter than steps")
    out_arr = np.empty(npaths, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p
    cdef int64_t s
    cdef uint64_t base
    cdef double x, xi, nu, result, b
    cdef int e
    with nogil:
        for p in range(npaths):
            base = (<uint64_t> (path0 + p)) * (<uint64_t> steps)
            x = x0
            for s in range(steps):
                xi = _normal_at(key, base + (<uint64_t> s))
                nu = nu_above if x >= thr[s] else nu_below
                x = x + nu * (sqrt_dt * xi)
            # binary exponentiation, same order as the python kernel
            result = 1.0
            b = x
            e = power
            while e > 0:
                if e & 1:
                    result = result * b
                e >>= 1
                if e:
                    b = b * b
            out[p] = result
    return out_arr


def fd_evolve(u0, double sigma2, double inv_dx2, dts, boundary_lo, boundary_hi):
    """Explicit monotone stepping; see the python twin for the contract."""
    u_arr = np.array(u0, dtype=np.float64)
    scratch = np.empty_like(u_arr)
    cdef double[::1] u = u_arr
    cdef double[::1] w = scratch
    cdef double[::1] dt = np.ascontiguousarray(dts, dtype=np.float64)
    cdef double[::1] blo = np.ascontiguousarray(boundary_lo, dtype=np.float64)
    cdef double[::1] bhi = np.ascontiguousarray(boundary_hi, dtype=np.float64)
    cdef Py_ssize_t nsteps = dt.shape[0]
    cdef Py_ssize_t nn = u.shape[0]
    cdef Py_ssize_t s, i
    cdef double d2, g, half_dt
    if blo.shape[0] < nsteps or bhi.shape[0] < nsteps:
        raise ValueError("boundary arrays shorter than dts")
    with nogil:
        for s in range(nsteps):
            half_dt = 0.5 * dt[s]
            for i in range(1, nn - 1):
                d2 = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_dx2
                g = d2 if d2 > 0.0 else sigma2 * d2
                w[i] = u[i] + half_dt * g
            for i in range(1, nn - 1):
                u[i] = w[i]
            u[0] = blo[s]
            u[nn - 1] = bhi[s]
    return u_arr
