"""Monotone explicit finite-difference cross-check of the closed forms.

The scheme is forward Euler in time with the central second difference
inside the nonlinearity G(a) = (a^+ - sigma^2 a^-)/2:

    u_i <- u_i + dt * G( (u_{i-1} - 2 u_i + u_{i+1}) / dx^2 ).

It is monotone for dt <= dx^2 (self-weight 1 - cfl with cfl = dt/dx^2),
hence convergent to the viscosity solution; we enforce cfl <= 0.5.
Boundary nodes are pinned each step to the closed-form trace, so the
reported error measures interior scheme consistency rather than domain
truncation; the even-power cases cross-check that pinning against
independently known classical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import get_kernels
from .gaussians import classical_shifted_moment
from .profile import eval_solution, profile_for


class NumericsError(RuntimeError):
    """The scheme produced non-finite values."""


@dataclass(frozen=True)
class FDGrid:
    """Space-time grid: nx interior nodes on (x_min, x_max), dt = cfl*dx^2."""

    x_min: float
    x_max: float
    nx: int
    T: float
    cfl: float = 0.25

    def __post_init__(self):
        if not (self.x_min < 0.0 < self.x_max):
            raise ValueError("grid must satisfy x_min < 0 < x_max")
        if self.nx < 16:
            raise ValueError("nx must be at least 16")
        if self.T <= 0.0:
            raise ValueError("T must be positive")
        if not (0.0 < self.cfl <= 0.5):
            raise ValueError("cfl must lie in (0, 0.5] for a monotone scheme")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx + 1)

    @property
    def dt(self) -> float:
        return self.cfl * self.dx * self.dx

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx + 2)

    def refined(self, factor: int = 2) -> "FDGrid":
        """Same domain with dx divided by factor (nx -> factor*(nx+1)-1)."""
        return FDGrid(
            x_min=self.x_min,
            x_max=self.x_max,
            nx=factor * (self.nx + 1) - 1,
            T=self.T,
            cfl=self.cfl,
        )


@dataclass(frozen=True)
class GridSolution:
    grid: FDGrid
    values: np.ndarray
    boundary_mode: str = "pinned-exact"

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes


def closed_solution(m: int, sigma: float, t, x):
    """Closed-form solution used for boundary pinning and error reporting.

    Even m: classical unit-volatility moment (convex initial data).
    Odd m:  the free-boundary solution for this sigma.
    """
    if m % 2 == 0:
        return classical_shifted_moment(m, x, np.sqrt(np.asarray(t, dtype=float)))
    n = (m - 1) // 2
    if n == 0:
        return np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))[0].copy()
    return eval_solution(n, sigma, t, x)


def fd_solve(m: int, sigma: float, grid: FDGrid, backend: str = "auto") -> GridSolution:
    """March u(0, x) = x^m to time grid.T; boundaries pinned to closed form."""
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    if not (0.0 <= sigma <= 1.0):
        raise ValueError("sigma must lie in [0, 1]")
    m = int(m)

    xs = grid.nodes
    u0 = xs**m
    dt = grid.dt
    nsteps = max(1, math.ceil(grid.T / dt))
    dts = np.full(nsteps, dt)
    dts[-1] = grid.T - (nsteps - 1) * dt  # land exactly on T
    times = np.cumsum(dts)

    if m % 2 == 1 and m >= 3:
        profile_for((m - 1) // 2, sigma)  # solve once before the time loop
    blo = np.asarray(closed_solution(m, sigma, times, xs[0]), dtype=float)
    bhi = np.asarray(closed_solution(m, sigma, times, xs[-1]), dtype=float)

    kern = get_kernels(backend)
    u = kern.fd_evolve(u0, sigma * sigma, 1.0 / (grid.dx * grid.dx), dts, blo, bhi)
    if not np.all(np.isfinite(u)):
        bad = int(np.argmax(~np.isfinite(u)))
        raise NumericsError(
            f"non-finite value at node {bad} (x={xs[bad]:.4g}) after {nsteps} steps; "
            f"dx={grid.dx:.3e}, dt={dt:.3e}"
        )
    return GridSolution(grid=grid, values=u)


def value_at(sol: GridSolution, x: float) -> float:
    """Grid solution linearly interpolated at x (0 need not be a node)."""
    return float(np.interp(x, sol.x, sol.values))


def error_vs_closed(
    sol: GridSolution, m: int, sigma: float, x_lo: float = -np.inf, x_hi: float = np.inf
) -> float:
    """Max abs error against the closed form on nodes within [x_lo, x_hi]."""
    xs = sol.x
    mask = (xs >= x_lo) & (xs <= x_hi)
    ref = closed_solution(m, sigma, sol.grid.T, xs[mask])
    return float(np.max(np.abs(sol.values[mask] - ref)))


def export_rows(sol: GridSolution, m: int, sigma: float):
    """(x, u_numeric, u_closed, error) rows for CSV export."""
    xs = sol.x
    ref = np.asarray(closed_solution(m, sigma, sol.grid.T, xs), dtype=float)
    for x, u, r in zip(xs, sol.values, ref):
        yield float(x), float(u), float(r), float(u - r)
