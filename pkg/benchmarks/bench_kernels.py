#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--paths N] [--steps N] [--nx N]
"""

import argparse
import time

import numpy as np

from gheat.backend import available_backends, get_kernels
from gheat.boundary import solve_free_boundary
from gheat.fd import FDGrid, fd_solve
from gheat.mc import McPolicy, mc_value


def time_mc(backend: str, paths: int, steps: int) -> tuple[float, float]:
    fb = solve_free_boundary(1, 0.5)
    pol = McPolicy.feedback(fb)
    t0 = time.perf_counter()
    est = mc_value(3, 0.5, 1.0, 0.0, pol, paths, steps, seed=1, backend=backend)
    return time.perf_counter() - t0, est.mean


def time_fd(backend: str, nx: int) -> tuple[float, float]:
    grid = FDGrid(-8.0, 8.0, nx, 1.0, 0.25)
    t0 = time.perf_counter()
    sol = fd_solve(3, 0.5, grid, backend=backend)
    return time.perf_counter() - t0, float(sol.values[len(sol.values) // 2])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--paths", type=int, default=200_000)
    ap.add_argument("--steps", type=int, default=400)
    ap.add_argument("--nx", type=int, default=800)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {backends}")
    rows = []
    for name in backends:
        get_kernels(name)  # fail fast if unavailable
        time_mc(name, 1000, 10)  # warm caches so ordering is fair
        time_fd(name, 64)
        t_mc, v_mc = time_mc(name, args.paths, args.steps)
        t_fd, v_fd = time_fd(name, args.nx)
        rows.append((name, t_mc, v_mc, t_fd, v_fd))

    print(f"\n{'backend':8s} {'mc [s]':>10s} {'mc mean':>12s} {'fd [s]':>10s} {'fd mid':>12s}")
    for name, t_mc, v_mc, t_fd, v_fd in rows:
        print(f"{name:8s} {t_mc:10.3f} {v_mc:12.6f} {t_fd:10.3f} {v_fd:12.6f}")
    if len(rows) == 2:
        print(f"\nspeedup native/python: mc {rows[1][1]/rows[0][1]:.2f}x, "
              f"fd {rows[1][3]/rows[0][3]:.2f}x")
        same = np.isclose(rows[0][2], rows[1][2], rtol=0, atol=0)
        print(f"identical results: {bool(same and rows[0][4] == rows[1][4])}")


if __name__ == "__main__":
    main()
