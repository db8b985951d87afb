"""Monte Carlo simulation of the volatility-control representation.

The sublinear expectation of phi(B_t) equals the supremum of
E[phi(int_0^t nu_s dB_s)] over adapted controls nu taking values in
[sigma, 1].  Every admissible control therefore yields a lower bound;
the candidate-optimal control is the bang-bang feedback rule

    nu(t, X) = 1   if X >= c * sqrt(T - t)    (convex region: run hot)
             = sigma otherwise                (concave region: run cold)

with c the free boundary of the closed-form profile.  Paths use the
Euler scheme with the counter-based normals from the kernel modules, so
estimates are reproducible bit-for-bit for a given seed and independent
of path batching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import get_kernels
from .boundary import FreeBoundary


@dataclass(frozen=True)
class McPolicy:
    """Volatility control: constant nu, or bang-bang feedback on X."""

    kind: str  # "constant" | "feedback"
    nu: float | None = None
    boundary: FreeBoundary | None = None

    @staticmethod
    def constant(nu: float) -> "McPolicy":
        return McPolicy(kind="constant", nu=float(nu))

    @staticmethod
    def feedback(boundary: FreeBoundary) -> "McPolicy":
        return McPolicy(kind="feedback", boundary=boundary)

    def validate(self, sigma: float) -> None:
        if self.kind == "constant":
            if self.nu is None or not (sigma <= self.nu <= 1.0):
                raise ValueError(
                    f"constant control nu={self.nu} outside the admissible band "
                    f"[{sigma}, 1]"
                )
        elif self.kind == "feedback":
            if self.boundary is None:
                raise ValueError("feedback policy needs a FreeBoundary")
        else:
            raise ValueError(f"unknown policy kind {self.kind!r}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    paths: int
    steps: int
    seed: int


def mc_value(
    m: int,
    sigma: float,
    T: float,
    x0: float,
    policy: McPolicy,
    paths: int,
    steps: int,
    seed: int,
    backend: str = "auto",
    batch: int = 1_000_000,
) -> McEstimate:
    """Sample mean and standard error of X_T^m under the given control.

    Deterministic in (seed, paths, steps, policy): the batch size changes
    memory use only, never the result.
    """
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    if not (0.0 <= sigma <= 1.0):
        raise ValueError("sigma must lie in [0, 1]")
    if T <= 0.0:
        raise ValueError("T must be positive")
    if paths < 1 or steps < 1:
        raise ValueError("paths and steps must be >= 1")
    policy.validate(sigma)

    dt = T / steps
    sqrt_dt = math.sqrt(dt)
    t_grid = dt * np.arange(steps)
    if policy.kind == "constant":
        thresholds = np.zeros(steps)
        nu_above = nu_below = policy.nu
    else:
        thresholds = policy.boundary.c * np.sqrt(T - t_grid)
        nu_above, nu_below = 1.0, sigma

    kern = get_kernels(backend)
    payoffs = np.empty(paths)
    for lo in range(0, paths, batch):
        hi = min(lo + batch, paths)
        payoffs[lo:hi] = kern.mc_payoffs(
            seed, lo, hi - lo, steps, float(x0), sqrt_dt,
            thresholds, float(nu_above), float(nu_below), int(m),
        )

    mean = float(np.sum(payoffs) / paths)
    if paths > 1:
        var = float(np.sum(np.square(payoffs - mean)) / (paths - 1))
        stderr = math.sqrt(var / paths)
    else:
        stderr = 0.0
    return McEstimate(mean=mean, stderr=stderr, paths=paths, steps=steps, seed=int(seed))
