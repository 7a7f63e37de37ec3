"""Armijo-type backtracking on the operator change along the projection arc."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LineSearchStalled
from .problem import FeasibleSet, SelectionContext, SetValuedMap

__all__ = ["LineSearchResult", "armijo_search", "armijo_holds"]

ACCEPT_TOL = 1e-14


@dataclass(frozen=True)
class LineSearchResult:
    lam: float
    m: int
    y: np.ndarray
    nu: np.ndarray
    residual_norm: float


def armijo_holds(lam: float, u, nu, mu: float, residual_norm: float,
                 tol: float = 0.0) -> bool:
    """``lam |u - nu| <= mu |r_lam(w, u)|``."""
    return lam * float(np.linalg.norm(np.subtract(u, nu))) <= mu * residual_norm + tol


def armijo_search(set_: FeasibleSet, map_: SetValuedMap, w, u, mu: float,
                  gamma: float, max_m: int = 100,
                  ctx: SelectionContext | None = None) -> LineSearchResult:
    """Find the smallest ``m >= 0`` whose step ``lam = gamma**m`` passes the test.

    For each probe, ``y = P_C(w - lam u)`` and ``nu`` is the member of ``A(y)``
    nearest to ``u``. A probe with zero residual means ``w`` already solves
    the problem and is returned at once.

    ``ctx`` is accepted for oracles whose nearest query depends on the
    selection state; the built-in maps ignore it.
    """
    if not (0 < mu < 1 and 0 < gamma < 1):
        raise ValueError("mu and gamma must lie in (0, 1)")
    w = np.asarray(w, dtype=float)
    u = np.asarray(u, dtype=float)
    lam = 1.0
    probe = None
    for m in range(max_m + 1):
        y = set_.project(w - lam * u)
        rn = float(np.linalg.norm(w - y))
        nu = map_.nearest(y, u)
        probe = LineSearchResult(lam, m, y, nu, rn)
        if rn == 0.0 or armijo_holds(lam, u, nu, mu, rn):
            return probe
        lam *= gamma
    raise LineSearchStalled(
        f"no step accepted for m <= {max_m} (last residual {probe.residual_norm:.3e})",
        last_probe=probe)
