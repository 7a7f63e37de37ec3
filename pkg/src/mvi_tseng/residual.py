"""Natural residual ``r_mu(x, w) = x - P_C(x - mu w)``.

It vanishes exactly when ``x`` solves the VI with ``w`` in ``A(x)``, and it
is the solver's stopping signal. Always computed with the set's exact
projector, never with Procedure A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import FeasibleSet, sub

__all__ = ["Residual", "residual", "scaling_bounds_check"]


@dataclass(frozen=True)
class Residual:
    vector: np.ndarray
    norm: float
    mu: float


def residual(set_: FeasibleSet, x, w, mu: float) -> Residual:
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    x = np.asarray(x, dtype=float)
    r = sub(x, set_.project(x - mu * np.asarray(w, dtype=float)))
    return Residual(r, float(np.linalg.norm(r)), mu)


def scaling_bounds_check(set_: FeasibleSet, x, w, mu: float, tol: float = 1e-10) -> bool:
    """Check ``min(1, mu) |r_1| <= |r_mu| <= max(1, mu) |r_1|`` up to ``tol``."""
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    r1 = residual(set_, x, w, 1.0).norm
    rmu = residual(set_, x, w, mu).norm
    return min(1.0, mu) * r1 <= rmu + tol and rmu <= max(1.0, mu) * r1 + tol
