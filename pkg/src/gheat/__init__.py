"""Explicit solutions of the G-heat (Barenblatt) equation.

Closed-form self-similar profiles for monomial initial data under
volatility uncertainty [sigma, 1], the free-boundary constants that pin
them down, the resulting sublinear-expectation odd moments, and two
independent numerical cross-checks (a monotone finite-difference solver
and a controlled-diffusion Monte Carlo simulator).
"""

from .gaussians import (
    TailValue,
    abs_moment,
    classical_shifted_moment,
    double_factorial,
    gaussian_tail,
    scaled_tail,
    tail_pair,
)
from .polys import (
    BoundReport,
    PairIdentityReport,
    RationalPoly,
    g_poly,
    h_poly,
    left_asymptote,
    m_fn,
    mills_bounds,
    pair_identities,
)
from .boundary import (
    BracketError,
    ConvergenceError,
    FreeBoundary,
    boundary_scan,
    f_fn,
    l_fn,
    solve_free_boundary,
    solve_free_boundary_degenerate,
)
from .profile import (
    Profile,
    build_profile,
    constant_control_lower_bound,
    eval_profile,
    eval_solution,
    finance_log_moment,
    g_expectation_monomial,
    odd_moment,
    ode_residual,
    profile_for,
    reflected_solution,
)
from .fd import FDGrid, GridSolution, NumericsError, closed_solution, fd_solve
from .mc import McEstimate, McPolicy, mc_value
from .backend import available_backends, default_backend_name, get_kernels

__version__ = "0.1.0"

__all__ = [
    "TailValue", "abs_moment", "classical_shifted_moment", "double_factorial",
    "gaussian_tail", "scaled_tail", "tail_pair",
    "BoundReport", "PairIdentityReport", "RationalPoly", "g_poly", "h_poly",
    "left_asymptote", "m_fn", "mills_bounds", "pair_identities",
    "BracketError", "ConvergenceError", "FreeBoundary", "boundary_scan",
    "f_fn", "l_fn", "solve_free_boundary", "solve_free_boundary_degenerate",
    "Profile", "build_profile", "constant_control_lower_bound", "eval_profile",
    "eval_solution", "finance_log_moment", "g_expectation_monomial",
    "odd_moment", "ode_residual", "profile_for", "reflected_solution",
    "FDGrid", "GridSolution", "NumericsError", "closed_solution", "fd_solve",
    "McEstimate", "McPolicy", "mc_value",
    "available_backends", "default_backend_name", "get_kernels",
]
