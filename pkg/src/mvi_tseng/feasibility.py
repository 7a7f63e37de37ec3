"""Feasibility repair: Procedure A, exact projectors and the built-in sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhausted, DimensionMismatch, InfeasibleProblem
from .problem import FeasibleSet, as_point, membership

__all__ = [
    "Method",
    "FeasibilityReport",
    "procedure_a",
    "repair",
    "project_box",
    "project_hyperplane_box",
    "box_set",
    "halfspace_set",
    "hyperplane_box_set",
]

DEFAULT_MAX_STEPS = 10_000
ZERO_SUBGRADIENT = 1e-14


class Method(enum.Enum):
    ALREADY_FEASIBLE = "already_feasible"
    PROCEDURE_A = "procedure_a"
    EXACT_PROJECTOR = "exact_projector"


@dataclass(frozen=True)
class FeasibilityReport:
    output: np.ndarray
    steps: int
    method: Method


def procedure_a(set_: FeasibleSet, x, max_steps: int = DEFAULT_MAX_STEPS) -> FeasibilityReport:
    """Map ``x`` into ``C`` with doubled subgradient (reflection) steps.

    Each step is ``y <- y - 2 g(y) w / |w|^2`` with ``w`` a subgradient of
    ``g`` at ``y``: the reflection of ``y`` through the linearised constraint
    ``g(y) + <w, z - y> = 0``. Every point of ``C`` lies on the far side of
    that hyperplane, so no step moves away from ``C``.

    Raises
    ------
    InfeasibleProblem
        If ``|w| <= 1e-14`` while ``g(y)`` is still positive.
    BudgetExhausted
        If ``max_steps`` steps do not reach ``C``.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    y = as_point(x)
    if membership(set_, y):
        return FeasibilityReport(y, 0, Method.ALREADY_FEASIBLE)
    for step in range(1, max_steps + 1):
        gy = set_.g(y)
        w = np.asarray(set_.subgradient(y), dtype=float)
        nw2 = float(np.dot(w, w))
        if np.sqrt(nw2) <= ZERO_SUBGRADIENT:
            raise InfeasibleProblem(
                f"zero subgradient at a point with g = {gy:.3e}; the feasible set is empty")
        y = y - (2.0 * gy / nw2) * w
        if membership(set_, y):
            return FeasibilityReport(y, step, Method.PROCEDURE_A)
    raise BudgetExhausted(f"Procedure A did not reach the feasible set in {max_steps} steps")


def repair(set_: FeasibleSet, x, max_steps: int = DEFAULT_MAX_STEPS) -> FeasibilityReport:
    """Return a point of ``C`` no farther from any point of ``C`` than ``x`` is.

    Uses the exact projector when the set has one, Procedure A otherwise.
    """
    x = as_point(x)
    if set_.exact_projector is not None:
        return FeasibilityReport(set_.exact_projector(x), 0, Method.EXACT_PROJECTOR)
    return procedure_a(set_, x, max_steps)


# --------------------------------------------------------------------------
# exact projectors
# --------------------------------------------------------------------------


def _bounds(lo, hi, n=None):
    lo = np.asarray(lo, dtype=float).reshape(-1)
    hi = np.asarray(hi, dtype=float).reshape(-1)
    if n is not None:
        lo = np.broadcast_to(lo, (n,)).copy() if lo.size == 1 else lo
        hi = np.broadcast_to(hi, (n,)).copy() if hi.size == 1 else hi
    if lo.shape != hi.shape:
        raise DimensionMismatch(f"bounds differ in shape: {lo.shape} vs {hi.shape}")
    if np.any(lo > hi):
        raise ValueError("lower bound exceeds upper bound")
    return lo, hi


def project_box(lo, hi, x) -> np.ndarray:
    """Componentwise clamp of ``x`` into ``[lo, hi]``."""
    x = np.asarray(x, dtype=float)
    lo, hi = _bounds(lo, hi, x.size)
    if lo.shape != x.shape:
        raise DimensionMismatch(f"point has shape {x.shape}, bounds {lo.shape}")
    return np.clip(x, lo, hi)


def project_hyperplane_box(lo, hi, rhs: float, x) -> np.ndarray:
    """Euclidean projection onto ``{y : sum(y) = rhs, lo <= y <= hi}``.

    The minimiser is ``clip(x - lam, lo, hi)`` for the scalar multiplier
    ``lam`` at which the sum equals ``rhs``. The sum is piecewise linear and
    nonincreasing in ``lam`` with kinks at ``x - hi`` and ``x - lo``, so a
    bisection over the sorted kinks brackets ``lam`` between two adjacent
    ones, where it is found in closed form.
    """
    x = np.asarray(x, dtype=float)
    lo, hi = _bounds(lo, hi, x.size)
    if lo.shape != x.shape:
        raise DimensionMismatch(f"point has shape {x.shape}, bounds {lo.shape}")
    slack = 1e-12 * max(1.0, abs(rhs))
    if lo.sum() > rhs + slack or hi.sum() < rhs - slack:
        raise ValueError(f"empty set: sum(lo)={lo.sum()}, sum(hi)={hi.sum()}, rhs={rhs}")

    def total(lam):
        return float(np.clip(x - lam, lo, hi).sum())

    # total(kinks[0]) = sum(hi) >= rhs >= sum(lo) = total(kinks[-1])
    kinks = np.sort(np.concatenate([x - hi, x - lo]))
    i, j = 0, kinks.size - 1
    while j - i > 1:
        k = (i + j) // 2
        if total(kinks[k]) >= rhs:
            i = k
        else:
            j = k
    a, b = kinks[i], kinks[j]
    # classify at the segment midpoint; the kinks themselves are ambiguous
    z = np.clip(x - 0.5 * (a + b), lo, hi)
    free = (z > lo) & (z < hi)
    if free.any():
        fixed = z[~free].sum()
        lam = (x[free].sum() + fixed - rhs) / free.sum()
        lam = min(max(lam, a), b)
    else:
        lam = a
    y = np.clip(x - lam, lo, hi)
    # a 1-ulp nudge of lam can leave the sum off by rounding; spread the rest
    if free.any():
        y[free] += (rhs - y.sum()) / free.sum()
    return y


# --------------------------------------------------------------------------
# built-in sets
# --------------------------------------------------------------------------


def _max_affine(a: np.ndarray, b: np.ndarray):
    """``g(x) = max_k (a_k . x - b_k)``; subgradient is the first maximising row."""

    def g(x):
        return float(np.max(a @ x - b))

    def subgradient(x):
        return a[int(np.argmax(a @ x - b))].copy()

    return g, subgradient


def _box_rows(lo, hi):
    # interleaved pieces x_i - hi_i, lo_i - x_i
    n = lo.size
    eye = np.eye(n)
    a = np.empty((2 * n, n))
    b = np.empty(2 * n)
    a[0::2], b[0::2] = eye, hi
    a[1::2], b[1::2] = -eye, -lo
    return a, b


def box_set(lo, hi, with_projector: bool = True, feas_tol: float = 1e-12) -> FeasibleSet:
    """The box ``[lo, hi]`` as the zero sublevel set of its largest affine violation."""
    lo, hi = _bounds(lo, hi)
    g, sg = _max_affine(*_box_rows(lo, hi))
    proj = (lambda x: np.clip(np.asarray(x, dtype=float), lo, hi)) if with_projector else None
    return FeasibleSet(g, sg, proj, feas_tol, (lo, hi), f"box [{lo}, {hi}]")


def halfspace_set(a, b: float, with_projector: bool = True,
                  feas_tol: float = 1e-12) -> FeasibleSet:
    """``{x : a . x <= b}``."""
    a = as_point(a)
    if not np.any(a):
        raise ValueError("normal vector must be nonzero")
    aa = float(a @ a)

    def g(x):
        return float(a @ x - b)

    def proj(x):
        x = np.asarray(x, dtype=float)
        v = a @ x - b
        return x - (v / aa) * a if v > 0 else x.copy()

    return FeasibleSet(g, lambda x: a.copy(), proj if with_projector else None,
                       feas_tol, None, f"half-space {a}.x <= {b}")


def hyperplane_box_set(lo, hi, rhs: float, with_projector: bool = True,
                       feas_tol: float = 1e-12) -> FeasibleSet:
    """``{x : sum(x) = rhs, lo <= x <= hi}``.

    ``g`` is the largest of the affine box violations and the quadratic
    ``(sum(x) - rhs)^2 / 2``. The quadratic piece is what lets Procedure A
    finish: its doubled subgradient step lands exactly on the hyperplane,
    while any affine encoding of the equality would only reflect across it.
    """
    lo, hi = _bounds(lo, hi)
    if lo.sum() > rhs or hi.sum() < rhs:
        raise ValueError("empty set")
    a, b = _box_rows(lo, hi)
    n = lo.size
    ones = np.ones(n)

    def pieces(x):
        s = float(x.sum()) - rhs
        return np.append(a @ x - b, 0.5 * s * s), s

    def g(x):
        return float(np.max(pieces(np.asarray(x, dtype=float))[0]))

    def subgradient(x):
        x = np.asarray(x, dtype=float)
        vals, s = pieces(x)
        k = int(np.argmax(vals))
        return a[k].copy() if k < 2 * n else s * ones

    proj = (lambda x: project_hyperplane_box(lo, hi, rhs, x)) if with_projector else None
    return FeasibleSet(g, subgradient, proj, feas_tol, (lo, hi),
                       f"hyperplane sum(x)={rhs} within box [{lo}, {hi}]")
