"""Constrained l1 sound design over the brightness order.

Given a target timbre p and a brightness bound b, find a timbre x no brighter
than b that is l1-closest to p, or that minimises the summed distance to both.
Both problems become linear programs by the usual absolute-value split;
simplex membership (sum 1, nonnegativity) is part of the constraint set so
that the solution is itself a timbre.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .orders import Comparison
from .simplex import LPResult, LPStandardForm, LPStatus, lp_solve
from .timbre import TimbralVector, brightness_compare, infimum, suffix_profile

STAGE_TWO_SLACK = 1e-9


class Variant(enum.Enum):
    CLOSEST_TO_TARGET = "l1min"
    BI_OBJECTIVE = "l1min2"


class DesignStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


_DESIGN_STATUS = {
    LPStatus.OPTIMAL: DesignStatus.OPTIMAL,
    LPStatus.INFEASIBLE: DesignStatus.INFEASIBLE,
    LPStatus.UNBOUNDED: DesignStatus.NUMERICAL_FAILURE,
    LPStatus.ITERATION_LIMIT: DesignStatus.NUMERICAL_FAILURE,
}


@dataclass(frozen=True, eq=False)
class DesignProblem:
    target: TimbralVector
    bound: TimbralVector
    variant: Variant = Variant.CLOSEST_TO_TARGET

    def __post_init__(self) -> None:
        if self.target.n != self.bound.n:
            raise ValueError(
                f"target has {self.target.n} harmonics, bound has {self.bound.n}"
            )

    @property
    def n(self) -> int:
        return self.target.n


@dataclass(frozen=True, eq=False)
class DesignSolution:
    x: TimbralVector | None
    objective: float
    status: DesignStatus


def _abs_split_rows(n: int, n_vars: int, x_at: int, aux_at: int) -> np.ndarray:
    """Rows encoding aux >= |x - ref|: x - aux <= ref and -x - aux <= -ref."""
    rows = np.zeros((2 * n, n_vars))
    for i in range(n):
        rows[i, x_at + i] = 1.0
        rows[i, aux_at + i] = -1.0
        rows[n + i, x_at + i] = -1.0
        rows[n + i, aux_at + i] = -1.0
    return rows


def _suffix_rows(n: int, n_vars: int) -> np.ndarray:
    """Rows whose product with (x, ...) gives the suffix profile of x."""
    rows = np.zeros((n, n_vars))
    for i in range(n):
        rows[i, n - 1 - i : n] = 1.0
    return rows


def to_lp(problem: DesignProblem) -> LPStandardForm:
    """Reformulate as an LP over (x, u) or (x, u, w).

    u bounds |x - target| and w bounds |x - bound|; the objective sums the
    active bound variables.  Inequalities: the two-sided splits, then the
    suffix-sum rows keeping x no brighter than the bound.  One equality pins
    the total power to 1.
    """
    n = problem.n
    p = problem.target.power
    b = problem.bound.power
    bi = problem.variant is Variant.BI_OBJECTIVE
    n_vars = 3 * n if bi else 2 * n

    blocks = [_abs_split_rows(n, n_vars, 0, n)]
    rhs = [p, -p]
    if bi:
        blocks.append(_abs_split_rows(n, n_vars, 0, 2 * n))
        rhs.extend([b, -b])
    blocks.append(_suffix_rows(n, n_vars))
    rhs.append(suffix_profile(problem.bound))

    a_ub = np.vstack(blocks)
    b_ub = np.concatenate(rhs)
    a_eq = np.zeros((1, n_vars))
    a_eq[0, :n] = 1.0
    c = np.zeros(n_vars)
    c[n:] = 1.0
    return LPStandardForm(c, a_ub, b_ub, a_eq, np.array([1.0]))


def _solution_from_result(n: int, result: LPResult) -> DesignSolution:
    status = _DESIGN_STATUS[result.status]
    if status is not DesignStatus.OPTIMAL:
        return DesignSolution(None, float("nan"), status)
    return DesignSolution(TimbralVector(result.x[:n]), result.cost, status)


def solve_design(problem: DesignProblem) -> DesignSolution:
    """Optimal solution of the reformulated LP.

    The reported objective is in raw l1 units (the summed split variables);
    halve it for total variation distance.  Solutions need not be unique; the
    deterministic pivot rule fixes which vertex is returned.
    """
    return _solution_from_result(problem.n, lp_solve(to_lp(problem)))


def solve_closest_to_bound(problem: DesignProblem) -> DesignSolution:
    """Among minimisers of the distance to the target, get closest to the bound.

    Stage one minimises ||x - p||_1; stage two minimises ||x - b||_1 subject
    to the original constraints plus a budget pinning stage one's optimum
    (with a tiny slack, since exact equality on a floating optimum is
    brittle).  The reported objective is the stage-one distance at the
    returned point.
    """
    if problem.variant is not Variant.CLOSEST_TO_TARGET:
        raise ValueError("two-stage refinement applies to the closest-to-target variant")
    stage_one = solve_design(problem)
    if stage_one.status is not DesignStatus.OPTIMAL:
        return stage_one

    n = problem.n
    p = problem.target.power
    b = problem.bound.power
    n_vars = 3 * n
    blocks = [
        _abs_split_rows(n, n_vars, 0, n),
        _abs_split_rows(n, n_vars, 0, 2 * n),
        _suffix_rows(n, n_vars),
    ]
    rhs = [p, -p, b, -b, suffix_profile(problem.bound)]
    budget = np.zeros((1, n_vars))
    budget[0, n : 2 * n] = 1.0
    blocks.append(budget)
    rhs.append(np.array([stage_one.objective + STAGE_TWO_SLACK]))
    a_eq = np.zeros((1, n_vars))
    a_eq[0, :n] = 1.0
    c = np.zeros(n_vars)
    c[2 * n :] = 1.0
    lp = LPStandardForm(c, np.vstack(blocks), np.concatenate(rhs), a_eq, np.array([1.0]))
    result = lp_solve(lp)
    if result.status is not LPStatus.OPTIMAL:
        return DesignSolution(None, float("nan"), _DESIGN_STATUS[result.status])
    x = TimbralVector(result.x[:n])
    return DesignSolution(x, float(np.abs(x.power - p).sum()), DesignStatus.OPTIMAL)


def _simplex_grid(n: int, steps: int) -> np.ndarray:
    """All probability vectors of length n on the grid with the given steps."""
    if n == 1:
        return np.array([[float(steps)]]) / steps
    out = []
    if n == 2:
        for i in range(steps + 1):
            out.append((i, steps - i))
    elif n == 3:
        for i in range(steps + 1):
            for j in range(steps + 1 - i):
                out.append((i, j, steps - i - j))
    else:
        for i in range(steps + 1):
            for j in range(steps + 1 - i):
                for k in range(steps + 1 - i - j):
                    out.append((i, j, k, steps - i - j - k))
    return np.asarray(out, dtype=float) / steps


def oracle_solve(problem: DesignProblem, resolution: float) -> DesignSolution:
    """Exhaustive grid search over the simplex; verification use only.

    The feasible set always contains the grid point putting all power in the
    fundamental, so a point is always returned.  The returned objective can
    exceed the LP optimum by at most n * resolution.
    """
    if problem.n > 4:
        raise ValueError("grid oracle supports n <= 4 only")
    if resolution not in (0.01, 0.02, 0.05):
        raise ValueError("resolution must be one of 0.01, 0.02, 0.05")
    steps = round(1.0 / resolution)
    grid = _simplex_grid(problem.n, steps)
    profiles = np.cumsum(grid[:, ::-1], axis=1)
    bound_profile = suffix_profile(problem.bound)
    feasible = np.all(profiles <= bound_profile + 1e-12, axis=1)
    points = grid[feasible]
    cost = np.abs(points - problem.target.power).sum(axis=1)
    if problem.variant is Variant.BI_OBJECTIVE:
        cost = cost + np.abs(points - problem.bound.power).sum(axis=1)
    best = int(np.argmin(cost))
    return DesignSolution(
        TimbralVector(points[best]), float(cost[best]), DesignStatus.OPTIMAL
    )


def solution_no_brighter_than_target(
    problem: DesignProblem, solution: DesignSolution, tol: float = 1e-6
) -> bool:
    """Whether the solution sits at or below the target in the brightness order."""
    if solution.status is not DesignStatus.OPTIMAL or solution.x is None:
        raise ValueError("check applies to optimal solutions only")
    verdict = brightness_compare(solution.x, problem.target, tol)
    return verdict in (Comparison.LESS, Comparison.EQUAL)


# randomized search for instances where the lattice infimum is suboptimal ----


@dataclass(frozen=True, eq=False)
class SearchReport:
    """Outcome of the randomized infimum-gap search; deterministic per seed."""

    n: int
    trials: int
    seed: int
    gap_tol: float
    found: bool
    trial_index: int | None = None
    target: np.ndarray | None = None
    bound: np.ndarray | None = None
    infimum_point: np.ndarray | None = None
    objective_at_infimum: float | None = None
    lp_objective: float | None = None

    @property
    def gap(self) -> float | None:
        if not self.found:
            return None
        return self.objective_at_infimum - self.lp_objective


@lru_cache(maxsize=None)
def _search_system(n: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Pre-normalized equality system for the closest-to-target LP.

    Rows: x - u + s = p; x + u - s' = p; suffix rows + s'' = Hb; sum x = 1.
    All right-hand sides are nonnegative for probability-vector data, so the
    matrix never needs per-instance sign flips.
    """
    n_struct = 2 * n
    n_slack = 3 * n
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
        a[2 * n + i, n - 1 - i : n] = 1.0
        a[2 * n + i, n_struct + 2 * n + i] = 1.0
    a[3 * n, :n] = 1.0
    c = np.zeros(n_struct + n_slack)
    c[n:n_struct] = 1.0
    max_iter = 200 + 50 * (m + a.shape[1])
    return a, c, max_iter


def _fast_closest_solve(p: np.ndarray, bound_profile: np.ndarray) -> np.ndarray | None:
    n = p.size
    a, c, max_iter = _search_system(n)
    b = np.concatenate([p, p, bound_profile, [1.0]])
    code, v = _kernels.simplex_solve(a, b, c, 1e-9, max_iter)
    if int(code) != _kernels.SIMPLEX_OPTIMAL:
        return None
    return v[:n]


def counterexample_search(
    n: int, trials: int, seed: int, gap_tol: float = 1e-4
) -> SearchReport:
    """Sample (target, bound) pairs uniformly on the simplex and hunt for an
    instance where the dominance infimum of bound and target is farther from
    the target than the LP optimum by more than ``gap_tol``.

    Stops at the first hit; reports not-found when the budget runs out, which
    is inconclusive rather than a refutation.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        p = rng.dirichlet(np.ones(n))
        b = rng.dirichlet(np.ones(n))
        tp = TimbralVector(p)
        tb = TimbralVector(b)
        z = infimum(tb, tp)
        objective_z = float(np.abs(z.power - tp.power).sum())
        x = _fast_closest_solve(tp.power, suffix_profile(tb))
        if x is None:
            continue
        lp_objective = float(np.abs(x - tp.power).sum())
        if objective_z - lp_objective > gap_tol:
            return SearchReport(
                n=n,
                trials=trials,
                seed=seed,
                gap_tol=gap_tol,
                found=True,
                trial_index=trial,
                target=tp.power,
                bound=tb.power,
                infimum_point=z.power,
                objective_at_infimum=objective_z,
                lp_objective=lp_objective,
            )
    return SearchReport(n=n, trials=trials, seed=seed, gap_tol=gap_tol, found=False)
