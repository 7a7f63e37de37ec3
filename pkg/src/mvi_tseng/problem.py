"""Domain types for multi-valued variational inequalities MVI(A, C).

Points are plain 1-D ``float64`` numpy arrays. The containers here are frozen
dataclasses holding pure callables, so a problem can be shared freely between
threads and solver runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "as_point",
    "add",
    "sub",
    "scale",
    "axpy",
    "dot",
    "norm",
    "FeasibleSet",
    "SetValuedMap",
    "Strategy",
    "SelectionContext",
    "Validation",
    "SolverParams",
    "VIProblem",
    "membership",
    "interval_map",
    "constant_map",
]


# --------------------------------------------------------------------------
# points and vector arithmetic
# --------------------------------------------------------------------------


def as_point(x, dim: Optional[int] = None) -> np.ndarray:
    """Convert ``x`` to a finite 1-D float array, optionally checking its length."""
    p = np.array(x, dtype=float).reshape(-1)
    if p.size < 1:
        raise ValueError("a point needs at least one coordinate")
    if dim is not None and p.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p}")
    return p


def _check(a: np.ndarray, b: np.ndarray) -> None:
    if np.shape(a) != np.shape(b):
        raise DimensionMismatch(f"dimension mismatch: {np.shape(a)} vs {np.shape(b)}")


def add(a, b):
    _check(a, b)
    return np.add(a, b)


def sub(a, b):
    _check(a, b)
    return np.subtract(a, b)


def scale(s: float, a):
    return s * np.asarray(a, dtype=float)


def axpy(s: float, a, b):
    """Return ``s * a + b``."""
    _check(a, b)
    return s * np.asarray(a, dtype=float) + b


def dot(a, b) -> float:
    _check(a, b)
    return float(np.dot(a, b))


def norm(a) -> float:
    return float(np.linalg.norm(a))


# --------------------------------------------------------------------------
# feasible set
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibleSet:
    """Closed convex set ``C = {x : g(x) <= 0}``.

    Attributes
    ----------
    g : callable
        Convex constraint function.
    subgradient : callable
        Returns some element of the subdifferential of ``g`` at a point.
    exact_projector : callable, optional
        Euclidean projection onto ``C``. Residuals need it; repair prefers it.
    feas_tol : float
        Membership tolerance on ``g``.
    bounds : (lo, hi), optional
        A bounding box of ``C``, used only to sample feasible points.
    description : str
    """

    g: Callable[[np.ndarray], float]
    subgradient: Callable[[np.ndarray], np.ndarray]
    exact_projector: Optional[Callable[[np.ndarray], np.ndarray]] = None
    feas_tol: float = 1e-12
    bounds: Optional[tuple] = None
    description: str = ""

    def __post_init__(self):
        if self.feas_tol < 0:
            raise ValueError("feas_tol must be nonnegative")

    @property
    def has_projector(self) -> bool:
        return self.exact_projector is not None

    def project(self, x: np.ndarray) -> np.ndarray:
        if self.exact_projector is None:
            raise ValueError(f"set {self.description!r} has no exact projector")
        return self.exact_projector(x)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` feasible points: uniform in the bounding box, then projected."""
        if self.bounds is None or self.exact_projector is None:
            raise ValueError("sampling needs both bounds and an exact projector")
        lo, hi = (np.asarray(b, dtype=float) for b in self.bounds)
        raw = rng.uniform(lo, hi, size=(size, lo.size))
        return np.array([self.exact_projector(r) for r in raw])


def membership(set_: FeasibleSet, x) -> bool:
    """True iff ``g(x) <= feas_tol``."""
    return bool(set_.g(np.asarray(x, dtype=float)) <= set_.feas_tol)


# --------------------------------------------------------------------------
# set-valued operators
# --------------------------------------------------------------------------


class Strategy(enum.Enum):
    MIDPOINT = "midpoint"
    LOWER_END = "lower"
    UPPER_END = "upper"
    SEEDED_RANDOM = "random"


@dataclass(frozen=True)
class SelectionContext:
    """How ``select`` picks ``u`` from ``A(x)``.

    ``seed`` is only read by :attr:`Strategy.SEEDED_RANDOM`; the draw depends
    on ``(seed, iteration)`` alone, so reruns are reproducible.
    """

    strategy: Strategy = Strategy.MIDPOINT
    iteration: int = 0
    seed: int = 0

    def at(self, iteration: int) -> "SelectionContext":
        return SelectionContext(self.strategy, iteration, self.seed)

    def fraction(self) -> float:
        """Position in ``[0, 1]`` of the chosen member along a parameter interval."""
        if self.strategy is Strategy.MIDPOINT:
            return 0.5
        if self.strategy is Strategy.LOWER_END:
            return 0.0
        if self.strategy is Strategy.UPPER_END:
            return 1.0
        rng = np.random.default_rng([self.seed, self.iteration])
        return float(rng.uniform())


@dataclass(frozen=True)
class SetValuedMap:
    """Oracle for a set-valued operator ``A``.

    ``select(x, ctx)`` returns a member of ``A(x)``; ``nearest(y, u)`` returns
    the member of ``A(y)`` closest to ``u``.
    """

    select: Callable[[np.ndarray, SelectionContext], np.ndarray]
    nearest: Callable[[np.ndarray, np.ndarray], np.ndarray]
    description: str = ""


def interval_map(base: Callable[[np.ndarray], np.ndarray], axis: int,
                 t_lo: float, t_hi: float, description: str = "") -> SetValuedMap:
    """``A(x) = {base(x) + t e_axis : t in [t_lo, t_hi]}``.

    The nearest member to ``u`` clamps coordinate ``axis`` into
    ``[base(y)_axis + t_lo, base(y)_axis + t_hi]`` and copies the others from
    ``base(y)``, which returns ``u`` bit-for-bit when ``u`` is already a member.
    """
    if not t_lo <= t_hi:
        raise ValueError(f"empty parameter interval [{t_lo}, {t_hi}]")

    def select(x, ctx=SelectionContext()):
        v = np.array(base(x), dtype=float)
        t = t_lo + ctx.fraction() * (t_hi - t_lo)
        v[axis] += min(max(t, t_lo), t_hi)
        return v

    def nearest(y, u):
        v = np.array(base(y), dtype=float)
        _check(v, u)
        v[axis] = min(max(u[axis], v[axis] + t_lo), v[axis] + t_hi)
        return v

    return SetValuedMap(select, nearest, description)


def constant_map(c) -> SetValuedMap:
    """Single-valued constant operator ``A(x) = {c}``."""
    c = as_point(c)
    return SetValuedMap(lambda x, ctx=None: c.copy(), lambda y, u: c.copy(), f"constant {c}")


# --------------------------------------------------------------------------
# parameters and problem container
# --------------------------------------------------------------------------


class Validation(enum.Enum):
    STRICT = "strict"
    WARN = "warn"
    OFF = "off"


@dataclass(frozen=True)
class SolverParams:
    """Algorithm parameters.

    ``alpha`` is the constant inertia coefficient; ``epsilon`` the stopping
    tolerance on the natural residual.
    """

    mu: float = 0.5
    gamma: float = 0.5
    alpha: float = 0.0
    epsilon: float = 1e-6
    max_iters: int = 10_000
    max_linesearch: int = 100
    validation: Validation = Validation.WARN
    selection: SelectionContext = field(default_factory=SelectionContext)
    instrument: bool = True

    def __post_init__(self):
        self.check()

    def check(self) -> None:
        """Raise ``ValueError`` if a parameter is out of range."""
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"mu must lie in (0, 1), got {self.mu}")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.alpha >= 0.0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iters < 1 or self.max_linesearch < 1:
            raise ValueError("max_iters and max_linesearch must be positive")


@dataclass(frozen=True)
class VIProblem:
    set: FeasibleSet
    map: SetValuedMap
    dim: int
    known_solution: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.known_solution is not None:
            object.__setattr__(self, "known_solution", as_point(self.known_solution, self.dim))
