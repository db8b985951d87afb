import numpy as np
import pytest

from gheat.fd import FDGrid, error_vs_closed, export_rows, fd_solve, value_at
from gheat.gaussians import double_factorial


def small_grid(nx=200, T=0.25, cfl=0.25):
    return FDGrid(x_min=-8.0, x_max=8.0, nx=nx, T=T, cfl=cfl)


class TestGrid:
    def test_cfl_guard(self):
        with pytest.raises(ValueError):
            FDGrid(-8.0, 8.0, 800, 1.0, cfl=0.6)

    def test_geometry_guards(self):
        with pytest.raises(ValueError):
            FDGrid(1.0, 8.0, 800, 1.0)
        with pytest.raises(ValueError):
            FDGrid(-8.0, 8.0, 8, 1.0)
        with pytest.raises(ValueError):
            FDGrid(-8.0, 8.0, 800, 0.0)

    def test_refined_halves_dx(self):
        g = small_grid()
        assert g.refined(2).dx == pytest.approx(g.dx / 2, rel=1e-15)


class TestEvenPowers:
    @pytest.mark.parametrize("sigma", [0.0, 0.5, 1.0])
    def test_square_is_classical(self, sigma):
        # u(t, x) = x^2 + t regardless of sigma (convex data)
        sol = fd_solve(2, sigma, small_grid())
        xs = sol.x
        mask = np.abs(xs) <= 2.0
        ref = xs[mask] ** 2 + sol.grid.T
        assert np.max(np.abs(sol.values[mask] - ref)) <= 2e-4

    def test_quartic_value_at_origin(self):
        # E[(sqrt(t) Z)^4] = 3 t^2 = (2n-1)!! t^2 for n = 2; nx odd puts a
        # node exactly at the origin
        sol = fd_solve(4, 0.3, small_grid(nx=401, T=1.0))
        assert value_at(sol, 0.0) == pytest.approx(
            double_factorial(3) * sol.grid.T**2, abs=2e-3
        )


class TestOddPowers:
    @pytest.mark.parametrize("sigma", [0.0, 0.5])
    def test_cubic_against_closed_form(self, sigma):
        sol = fd_solve(3, sigma, small_grid(nx=400, T=1.0))
        assert error_vs_closed(sol, 3, sigma, -2.0, 2.0) <= 2e-3

    @pytest.mark.parametrize("sigma", [0.0, 0.7])
    def test_quintic_against_closed_form(self, sigma):
        # ties the n = 2 closed form to an independent oracle as well
        sol = fd_solve(5, sigma, small_grid(nx=400, T=0.5))
        assert error_vs_closed(sol, 5, sigma, -2.0, 2.0) <= 5e-3

    def test_linear_initial_data_preserved(self):
        # u(t, x) = x solves the equation for every sigma
        sol = fd_solve(1, 0.5, small_grid())
        assert np.max(np.abs(sol.values - sol.x)) <= 1e-12 * np.max(np.abs(sol.x))


class TestPlumbing:
    def test_boundary_mode_and_export(self):
        sol = fd_solve(3, 0.5, small_grid())
        assert sol.boundary_mode == "pinned-exact"
        rows = list(export_rows(sol, 3, 0.5))
        assert len(rows) == sol.values.size
        x, u, ref, err = rows[0]
        assert err == pytest.approx(u - ref, abs=1e-15)

    def test_backend_equivalence(self):
        pytest.importorskip("gheat._kernels")
        g = small_grid(nx=64, T=0.05)
        a = fd_solve(3, 0.5, g, backend="native").values
        b = fd_solve(3, 0.5, g, backend="python").values
        assert np.array_equal(a, b)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            fd_solve(0, 0.5, small_grid())
        with pytest.raises(ValueError):
            fd_solve(3, 1.5, small_grid())
