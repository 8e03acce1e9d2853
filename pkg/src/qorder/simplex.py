"""Dense LP solving in standard form.

``LPStandardForm`` carries ``minimise c.v`` subject to ``A v <= u``,
``E v = d`` and ``v >= 0``.  The solver is a self-contained two-phase primal
simplex on a dense tableau with Bland's anti-cycling rule, so termination is
guaranteed; problems here have at most a few hundred variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


_STATUS_FROM_CODE = {
    _kernels.SIMPLEX_OPTIMAL: LPStatus.OPTIMAL,
    _kernels.SIMPLEX_INFEASIBLE: LPStatus.INFEASIBLE,
    _kernels.SIMPLEX_UNBOUNDED: LPStatus.UNBOUNDED,
    _kernels.SIMPLEX_ITERATION_LIMIT: LPStatus.ITERATION_LIMIT,
}


def _as_matrix(m, n_vars: int) -> np.ndarray:
    arr = np.array(m, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, n_vars)
    if arr.ndim != 2 or arr.shape[1] != n_vars:
        raise ValueError(f"constraint matrix shape {arr.shape} incompatible with {n_vars} variables")
    return arr


@dataclass(frozen=True, eq=False)
class LPStandardForm:
    """minimise objective.v  s.t.  a_ub v <= b_ub, a_eq v = b_eq, v >= 0."""

    objective: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.objective, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("objective must have at least one variable")
        a_ub = _as_matrix(self.a_ub, c.size)
        a_eq = _as_matrix(self.a_eq, c.size)
        b_ub = np.array(self.b_ub, dtype=float).ravel()
        b_eq = np.array(self.b_eq, dtype=float).ravel()
        if b_ub.size != a_ub.shape[0] or b_eq.size != a_eq.shape[0]:
            raise ValueError("right-hand side lengths disagree with constraint rows")
        for name, arr in (("objective", c), ("a_ub", a_ub), ("b_ub", b_ub),
                          ("a_eq", a_eq), ("b_eq", b_eq)):
            if not np.isfinite(arr).all():
                raise ValueError(f"non-finite entries in {name}")
            arr.setflags(write=False)
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)

    @property
    def n_vars(self) -> int:
        return int(self.objective.size)


@dataclass(frozen=True, eq=False)
class LPResult:
    x: np.ndarray
    cost: float
    status: LPStatus


def lp_solve(lp: LPStandardForm, tol: float = 1e-9, max_iter: int | None = None) -> LPResult:
    """Solve to an optimal basic feasible solution.

    Deterministic: Bland's rule fixes the pivot sequence, so repeated solves
    of the same instance return the same vertex.
    """
    nv = lp.n_vars
    mu = lp.a_ub.shape[0]
    me = lp.a_eq.shape[0]
    m = mu + me
    if m == 0:
        # v = 0 is optimal iff no cost is negative (v >= 0, unconstrained above)
        if bool((lp.objective < -tol).any()):
            return LPResult(np.zeros(nv), float("nan"), LPStatus.UNBOUNDED)
        return LPResult(np.zeros(nv), 0.0, LPStatus.OPTIMAL)

    a = np.zeros((m, nv + mu))
    a[:mu, :nv] = lp.a_ub
    a[:mu, nv:] = np.eye(mu)
    a[mu:, :nv] = lp.a_eq
    b = np.concatenate([lp.b_ub, lp.b_eq])
    flip = b < 0
    a[flip] *= -1.0
    b = np.abs(b)
    c = np.concatenate([lp.objective, np.zeros(mu)])
    if max_iter is None:
        max_iter = 200 + 50 * (m + nv + mu)

    code, v = _kernels.simplex_solve(a, b, c, tol, max_iter)
    status = _STATUS_FROM_CODE[int(code)]
    x = np.asarray(v[:nv], dtype=float)
    if status is LPStatus.OPTIMAL:
        cost = float(lp.objective @ x)
    else:
        x = np.zeros(nv)
        cost = float("nan")
    return LPResult(x, cost, status)
