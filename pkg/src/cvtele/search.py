"""Scalar maximization helpers shared by the optimizer and the metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError

XATOL = 1e-8
MAX_ITER = 200


@dataclass(frozen=True)
class Maximum:
    x: float
    value: float
    iterations: int


def maximize_bounded(f: Callable[[float], float], lo: float, hi: float,
                     xatol: float = XATOL, maxiter: int = MAX_ITER) -> Maximum:
    """Local maximum of ``f`` on ``[lo, hi]`` (golden section with parabolic steps)."""
    if hi - lo <= xatol:
        x = 0.5 * (lo + hi)
        return Maximum(x, float(f(x)), 0)
    res = minimize_scalar(lambda x: -f(x), bounds=(lo, hi), method="bounded",
                          options={"xatol": xatol, "maxiter": maxiter})
    if not res.success:
        raise ConvergenceError(f"scalar maximization failed: {res.message}",
                               best_estimate=float(-res.fun))
    # the bounded method never evaluates the endpoints; a monotone f peaks there
    cands = [(float(-res.fun), float(res.x)), (float(f(lo)), lo), (float(f(hi)), hi)]
    best = max(cands, key=lambda c: (c[0], -c[1]))
    return Maximum(best[1], best[0], int(res.nfev) + 2)


def grid_then_refine(f: Callable[[float], float], grid: np.ndarray,
                     xatol: float = XATOL) -> Maximum:
    """Coarse grid scan, then bounded refinement in the best cell's neighbourhood.

    Ties on the grid go to the smaller argument.
    """
    grid = np.asarray(grid, dtype=float)
    vals = np.array([f(x) for x in grid])
    k = int(np.argmax(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    best = maximize_bounded(f, lo, hi, xatol=xatol)
    if vals[k] > best.value:
        return Maximum(float(grid[k]), float(vals[k]), len(grid) + best.iterations)
    return Maximum(best.x, best.value, len(grid) + best.iterations)
