#!/usr/bin/env python3
"""Time the hot kernels: numba-jitted loops vs the pure-numpy fallbacks.

Run directly:  python bench/benchmark.py
The jitted column is skipped when numba is not installed.  One warm-up call
per kernel keeps compilation out of the timings.
"""

import time

import numpy as np

from qorder import _kernels, accel
from qorder.setclass import enumerate_set_classes


def best_of(func, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def simplex_batch(solver, systems):
    def run():
        for a, b, c in systems:
            solver(a.copy(), b, c, 1e-9, 2000)
    return run


def build_design_systems(count=200, n=4, seed=7):
    rng = np.random.default_rng(seed)
    n_struct, n_slack = 2 * n, 3 * n
    m = 3 * n + 1
    a = np.zeros((m, n_struct + n_slack))
    for i in range(n):
        a[i, i] = 1.0
        a[i, n + i] = -1.0
        a[i, n_struct + i] = 1.0
        a[n + i, i] = 1.0
        a[n + i, n + i] = 1.0
        a[n + i, n_struct + n + i] = -1.0
    for i in range(n):
        a[2 * n + i, n - 1 - i:n] = 1.0
        a[2 * n + i, n_struct + 2 * n + i] = 1.0
    a[3 * n, :n] = 1.0
    c = np.zeros(n_struct + n_slack)
    c[n:n_struct] = 1.0
    systems = []
    for _ in range(count):
        p = rng.dirichlet(np.ones(n))
        bb = rng.dirichlet(np.ones(n))
        rhs = np.concatenate([p, p, np.cumsum(bb[::-1]), [1.0]])
        systems.append((a, rhs, c))
    return systems


def report(name, numpy_time, jit_time):
    if jit_time is None:
        print(f"{name:34s} numpy {numpy_time * 1e3:9.2f} ms   numba n/a")
    else:
        print(f"{name:34s} numpy {numpy_time * 1e3:9.2f} ms   "
              f"numba {jit_time * 1e3:9.2f} ms   x{numpy_time / jit_time:6.1f}")


def main():
    print(f"numba available: {accel.HAS_NUMBA}; enabled: {accel.ENABLED}")
    print()

    n = 16
    jitted = accel.jit_compile(_kernels._canonical_masks_loop)
    if jitted is not None:
        jitted(4)  # compile
    report(
        f"transposition orbits (2^{n} masks)",
        best_of(lambda: _kernels._canonical_masks_numpy(n)),
        None if jitted is None else best_of(lambda: jitted(n)),
    )

    masks = np.array([c.mask for c in enumerate_set_classes(12)], dtype=np.int64)
    jitted = accel.jit_compile(_kernels._subset_leq_loop)
    if jitted is not None:
        jitted(masks[:4], 12)
    report(
        f"class subset order ({masks.size}^2 pairs)",
        best_of(lambda: _kernels._subset_leq_numpy(masks, 12)),
        None if jitted is None else best_of(lambda: jitted(masks, 12)),
    )

    systems = build_design_systems()
    plain = simplex_batch(_kernels._simplex_solve, systems)
    jit_solver = None
    if accel.HAS_NUMBA:
        jit_solver = _kernels.simplex_solve if accel.ENABLED else accel.jit_compile(
            _kernels._simplex_solve
        )
        a0, b0, c0 = systems[0]
        jit_solver(a0.copy(), b0, c0, 1e-9, 2000)
    report(
        f"simplex solves ({len(systems)} design LPs)",
        best_of(plain, repeats=3),
        None if jit_solver is None else best_of(simplex_batch(jit_solver, systems), repeats=3),
    )


if __name__ == "__main__":
    main()
