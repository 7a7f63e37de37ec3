"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the package's projection or line-search code.
"""

import itertools

import numpy as np


def qp_hyperplane_box(lo, hi, rhs, x, grid=21, sweeps=2000):
    """Projection onto ``{sum(y) = rhs, lo <= y <= hi}`` by brute force.

    A dense grid over the first ``n - 1`` coordinates (last one fixed by the
    sum) picks the best feasible start; pairwise coordinate descent, which
    moves mass between two coordinates at a time and so never leaves the
    hyperplane, refines it.
    """
    lo, hi, x = (np.asarray(v, dtype=float) for v in (lo, hi, x))
    n = x.size
    best, best_val = None, np.inf
    axes = [np.linspace(lo[i], hi[i], grid) for i in range(n - 1)]
    for head in itertools.product(*axes):
        last = rhs - sum(head)
        if lo[-1] - 1e-12 <= last <= hi[-1] + 1e-12:
            y = np.array(head + (min(max(last, lo[-1]), hi[-1]),))
            val = np.sum((y - x) ** 2)
            if val < best_val:
                best, best_val = y, val
    if best is None:  # grid too coarse for a thin set: walk in from the lower corner
        best = lo.copy()
        need = rhs - best.sum()
        for i in range(n):
            step = min(need, hi[i] - lo[i])
            best[i] += step
            need -= step
    y = best
    for _ in range(sweeps):
        moved = 0.0
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                # minimise over d: (y_i + d - x_i)^2 + (y_j - d - x_j)^2
                d = ((x[i] - y[i]) - (x[j] - y[j])) / 2.0
                d = min(d, hi[i] - y[i], y[j] - lo[j])
                d = max(d, lo[i] - y[i], y[j] - hi[j])
                y[i] += d
                y[j] -= d
                moved = max(moved, abs(d))
        if moved < 1e-15:
            break
    return y


def armijo_probe_loop(w, u, mu, gamma, project, members, max_m=400):
    """Smallest accepted ``m`` found by scanning a dense sample of ``A(y)``.

    ``members(y)`` returns an array of candidate members of ``A(y)``; the one
    closest to ``u`` is taken as ``nu``.
    """
    w, u = np.asarray(w, float), np.asarray(u, float)
    for m in range(max_m + 1):
        lam = gamma ** m
        y = project(w - lam * u)
        r = np.linalg.norm(w - y)
        cand = members(y)
        nu = cand[np.argmin(np.linalg.norm(cand - u, axis=1))]
        if r == 0 or lam * np.linalg.norm(u - nu) <= mu * r:
            return m, lam, y, nu, r
    raise RuntimeError("no acceptance")
