"""Inertial Tseng extragradient method with a single projection per iteration.

One iteration, starting from the repaired iterates ``x_n`` and ``x_{n-1}``::

    w_n      = x_n + alpha (x_n - x_{n-1})          inertial extrapolation
    u_n      in A(w_n)                              selection
    lam_n    = gamma**m_n                           Armijo search, gives y_n, nu_n
    y_n      = P_C(w_n - lam_n u_n)                 the one projection
    x~_{n+1} = y_n - lam_n (nu_n - u_n)             Tseng correction
    x_{n+1}  = R(x~_{n+1})                          feasibility repair

and the run stops once ``|w_n - y_n| <= epsilon``, returning ``w_n``.
"""

from __future__ import annotations

import enum
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleProblem, LineSearchStalled, ParamsOutOfTheory
from .feasibility import repair
from .linesearch import armijo_search
from .problem import SolverParams, Validation, VIProblem, as_point, membership

__all__ = [
    "Status",
    "Check",
    "IterationRecord",
    "SolveReport",
    "alpha_bound",
    "inertia_tau",
    "inertial_step",
    "tseng_step",
    "validate_params",
    "solve",
]

log = logging.getLogger(__name__)

DESCENT_TOL = 1e-9
TSENG_TOL = 1e-12


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERS = "MaxIters"
    LINE_SEARCH_STALLED = "LineSearchStalled"
    INFEASIBLE_PROBLEM = "InfeasibleProblem"


@dataclass(frozen=True)
class Check:
    """Outcome of one runtime inequality check; ``slack >= 0`` means it held."""

    name: str
    passed: bool
    slack: float


@dataclass
class IterationRecord:
    n: int
    x: np.ndarray
    w: np.ndarray
    u: np.ndarray
    lam: float
    m: int
    residual_norm: float
    repair_steps: int
    wallclock: float
    checks: list = field(default_factory=list)


@dataclass
class SolveReport:
    status: Status
    solution: np.ndarray
    final_residual: float
    iterations: int
    trace: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def failed_checks(self) -> list:
        return [(rec.n, c) for rec in self.trace for c in rec.checks if not c.passed]


def inertia_tau(mu: float) -> float:
    return 2.0 / (mu + 1.0) - 1.0


def alpha_bound(mu: float) -> float:
    """Largest admissible constant inertia (exclusive) for a given ``mu``."""
    if not 0.0 < mu < 1.0:
        raise ValueError(f"mu must lie in (0, 1), got {mu}")
    tau = inertia_tau(mu)
    return 1.0 - 4.0 / (math.sqrt(8.0 * tau + 1.0) + 3.0)


def inertial_step(x_n, x_prev, alpha: float) -> np.ndarray:
    x_n = np.asarray(x_n, dtype=float)
    return x_n + alpha * (x_n - np.asarray(x_prev, dtype=float))


def tseng_step(y, nu, u, lam: float) -> np.ndarray:
    """``y - lam (nu - u)``; the result may leave ``C``."""
    return np.asarray(y, dtype=float) - lam * (np.asarray(nu, dtype=float) - u)


def validate_params(params: SolverParams) -> list:
    """Check the inertia coefficient against the convergence bound.

    Returns the list of warnings (``Validation.WARN``) and raises
    :class:`ParamsOutOfTheory` instead in ``Validation.STRICT`` mode.
    """
    params.check()
    if params.validation is Validation.OFF:
        return []
    bound = alpha_bound(params.mu)
    if params.alpha < bound:
        return []
    msg = f"alpha {params.alpha:g} exceeds bound ≈{bound:.4f} (mu={params.mu:g})"
    if params.validation is Validation.STRICT:
        raise ParamsOutOfTheory(msg)
    return [msg]


def _sq(v) -> float:
    return float(np.dot(v, v))


def solve(problem: VIProblem, params: SolverParams, x0, x1) -> SolveReport:
    """Run the inertial Tseng method from the raw starting points ``x0``, ``x1``.

    When ``problem.known_solution`` is set and ``params.instrument`` is on,
    each record carries the per-iteration descent inequality and, if
    ``alpha`` is within its bound, the monotonicity of the Lyapunov
    sequence ``Phi_n``. The Tseng-step bound and feasibility of ``x_n`` are
    always checked.
    """
    warnings = validate_params(params)
    for msg in warnings:
        log.warning(msg)
    x0 = as_point(x0, problem.dim)
    x1 = as_point(x1, problem.dim)
    C, A = problem.set, problem.map
    mu, gamma, alpha = params.mu, params.gamma, params.alpha
    xstar = problem.known_solution if params.instrument else None
    tau = inertia_tau(mu)
    delta = alpha * (1 + alpha) - tau * (alpha * alpha - alpha)
    track_phi = xstar is not None and alpha < alpha_bound(mu)

    def phi(xn, xp):
        return _sq(xn - xstar) - alpha * _sq(xp - xstar) + delta * _sq(xn - xp)

    trace = []
    start = time.perf_counter()
    try:
        x_prev = repair(C, x0).output
        rep = repair(C, x1)
    except InfeasibleProblem as exc:
        return SolveReport(Status.INFEASIBLE_PROBLEM, x1, math.inf, 0, trace,
                           warnings + [str(exc)])
    x = rep.output
    solution, last_res = x, math.inf

    for n in range(1, params.max_iters + 1):
        w = inertial_step(x, x_prev, alpha)
        u = A.select(w, params.selection.at(n))
        try:
            ls = armijo_search(C, A, w, u, mu, gamma, params.max_linesearch, params.selection.at(n))
        except LineSearchStalled as exc:
            return SolveReport(Status.LINE_SEARCH_STALLED, w, last_res, n, trace,
                               warnings + [str(exc)])
        last_res = ls.residual_norm
        checks = [Check("feasible_x", membership(C, x), C.feas_tol - C.g(x))]

        if ls.residual_norm <= params.epsilon:
            trace.append(IterationRecord(n, x, w, u, ls.lam, ls.m, ls.residual_norm,
                                         rep.steps, time.perf_counter() - start, checks))
            return SolveReport(Status.CONVERGED, w, ls.residual_norm, n, trace, warnings)

        x_tilde = tseng_step(ls.y, ls.nu, u, ls.lam)
        try:
            rep_next = repair(C, x_tilde)
        except InfeasibleProblem as exc:
            return SolveReport(Status.INFEASIBLE_PROBLEM, w, last_res, n, trace,
                               warnings + [str(exc)])
        x_next = rep_next.output

        slack = ls.residual_norm - math.sqrt(_sq(x_tilde - w)) / (1 + mu)
        checks.append(Check("tseng_bound", slack >= -TSENG_TOL, slack))
        if xstar is not None:
            slack = (_sq(w - xstar) - (1 - mu * mu) * ls.residual_norm ** 2
                     - _sq(x_next - xstar))
            checks.append(Check("descent", slack >= -DESCENT_TOL, slack))
        if track_phi:
            slack = phi(x, x_prev) - phi(x_next, x)
            checks.append(Check("phi_monotone", slack >= -DESCENT_TOL, slack))

        trace.append(IterationRecord(n, x, w, u, ls.lam, ls.m, ls.residual_norm,
                                     rep.steps, time.perf_counter() - start, checks))
        x_prev, x, rep = x, x_next, rep_next
        solution = w

    return SolveReport(Status.MAX_ITERS, solution, last_res, params.max_iters, trace, warnings)
