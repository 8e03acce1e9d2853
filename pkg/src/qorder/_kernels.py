"""Hot numeric kernels with dual implementations.

Each kernel exists in two forms: an explicit-loop version meant for numba's
``@njit`` and a pure-numpy version that serves as the fallback.  Which form is
bound to the public name depends on :mod:`qorder.accel` (numba present and not
disabled by ``QO_NO_NUMBA``).  The simplex kernel is a single function whose
row operations are numpy slice arithmetic, so the same source runs tolerably
interpreted and fast compiled.  ``bench/benchmark.py`` times the forms against
each other.

Simplex status codes: 0 optimal, 1 infeasible, 2 unbounded, 3 iteration limit.
"""

import numpy as np

from . import accel

SIMPLEX_OPTIMAL = 0
SIMPLEX_INFEASIBLE = 1
SIMPLEX_UNBOUNDED = 2
SIMPLEX_ITERATION_LIMIT = 3

_FEAS_TOL = 1e-7


# ---------------------------------------------------------------------------
# transposition orbits of bitmask pitch class sets
# ---------------------------------------------------------------------------


def _canonical_masks_loop(n):
    # minimum over the n cyclic bit-rotations, for every mask < 2**n
    full = (1 << n) - 1
    count = 1 << n
    out = np.empty(count, np.int64)
    for m in range(count):
        best = m
        for t in range(1, n):
            r = ((m << t) | (m >> (n - t))) & full
            if r < best:
                best = r
        out[m] = best
    return out


def _canonical_masks_numpy(n):
    masks = np.arange(1 << n, dtype=np.int64)
    full = np.int64((1 << n) - 1)
    best = masks.copy()
    for t in range(1, n):
        rot = ((masks << t) | (masks >> (n - t))) & full
        np.minimum(best, rot, out=best)
    return best


def _subset_leq_loop(masks, n):
    # out[i, j]: some rotation of masks[i] is a bit-subset of masks[j]
    full = (1 << n) - 1
    count = masks.shape[0]
    out = np.zeros((count, count), np.bool_)
    for i in range(count):
        m = masks[i]
        for t in range(n):
            r = ((m << t) | (m >> (n - t))) & full
            for j in range(count):
                if not out[i, j] and (r & masks[j]) == r:
                    out[i, j] = True
    return out


def _subset_leq_numpy(masks, n):
    count = masks.shape[0]
    full = np.int64((1 << n) - 1)
    rots = np.empty((n, count), np.int64)
    for t in range(n):
        rots[t] = ((masks << t) | (masks >> (n - t))) & full
    lhs = rots[:, :, None]
    return ((lhs & masks[None, None, :]) == lhs).any(axis=0)


# ---------------------------------------------------------------------------
# dense two-phase primal simplex, Bland's rule
# ---------------------------------------------------------------------------


def _simplex_solve(a, b, c, tol, max_iter):
    """Minimise c.v subject to a.v = b (b >= 0), v >= 0.

    Slack/surplus columns must already be part of ``a``; one artificial
    variable per row is appended here and driven out by the first phase.
    Bland's rule (lowest eligible entering column; ratio ties broken by the
    lowest basis variable) guarantees termination.  Returns (status, v).
    """
    m, n = a.shape
    width = n + m + 1
    t = np.zeros((m + 1, width))
    basis = np.empty(m, np.int64)
    for i in range(m):
        for j in range(n):
            t[i, j] = a[i, j]
        t[i, n + i] = 1.0
        t[i, width - 1] = b[i]
        basis[i] = n + i
    # phase-1 objective (sum of artificials) in reduced form
    for i in range(m):
        t[m, :] -= t[i, :]

    iters = 0
    for phase in range(2):
        if phase == 1:
            if -t[m, width - 1] > _FEAS_TOL:
                return SIMPLEX_INFEASIBLE, np.zeros(n)
            # drive leftover artificials out of the basis; zero redundant rows
            for r in range(m):
                if basis[r] >= n:
                    found = -1
                    for j in range(n):
                        if t[r, j] > tol or t[r, j] < -tol:
                            found = j
                            break
                    if found >= 0:
                        piv = t[r, found]
                        t[r, :] /= piv
                        for i in range(m + 1):
                            if i != r:
                                f = t[i, found]
                                if f != 0.0:
                                    t[i, :] -= f * t[r, :]
                        for i in range(m + 1):
                            t[i, found] = 0.0
                        t[r, found] = 1.0
                        basis[r] = found
                    else:
                        t[r, :] = 0.0
            # rebuild the objective row from the real costs
            t[m, :] = 0.0
            for j in range(n):
                t[m, j] = c[j]
            for r in range(m):
                jb = basis[r]
                if jb < n and c[jb] != 0.0:
                    t[m, :] -= c[jb] * t[r, :]

        while True:
            if iters >= max_iter:
                return SIMPLEX_ITERATION_LIMIT, np.zeros(n)
            enter = -1
            for j in range(n):  # artificial columns never re-enter
                if t[m, j] < -tol:
                    enter = j
                    break
            if enter < 0:
                break
            leave = -1
            best_ratio = 0.0
            best_var = -1
            for i in range(m):
                coef = t[i, enter]
                if coef > tol:
                    ratio = t[i, width - 1] / coef
                    if leave < 0 or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < best_var
                    ):
                        leave = i
                        best_ratio = ratio
                        best_var = basis[i]
            if leave < 0:
                return SIMPLEX_UNBOUNDED, np.zeros(n)
            piv = t[leave, enter]
            t[leave, :] /= piv
            for i in range(m + 1):
                if i != leave:
                    f = t[i, enter]
                    if f != 0.0:
                        t[i, :] -= f * t[leave, :]
            # write the unit column exactly so basic reduced costs stay 0
            for i in range(m + 1):
                t[i, enter] = 0.0
            t[leave, enter] = 1.0
            basis[leave] = enter
            iters += 1

    v = np.zeros(n)
    for r in range(m):
        if basis[r] < n:
            v[basis[r]] = t[r, width - 1]
    return SIMPLEX_OPTIMAL, v


# public bindings -----------------------------------------------------------

if accel.ENABLED:
    canonical_masks = accel.njit(_canonical_masks_loop)
    subset_leq_matrix = accel.njit(_subset_leq_loop)
    simplex_solve = accel.njit(_simplex_solve)
else:
    canonical_masks = _canonical_masks_numpy
    subset_leq_matrix = _subset_leq_numpy
    simplex_solve = _simplex_solve
