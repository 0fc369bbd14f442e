"""Phase-1 simplex with Bland's rule for small dense feasibility problems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: np.ndarray | None
    infeasibility: float
    pivots: int


def phase_one(a, b, tol: float = 1e-9, max_pivots: int = 10_000) -> FeasibilityResult:
    """Decide whether ``{x >= 0 : A x = b}`` is non-empty.

    Minimizes the sum of artificial variables; feasible iff the optimum is
    at most ``tol``. Bland's smallest-index rule rules out cycling.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    m, n = a.shape
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    # columns: n structural, m artificial, then rhs
    tab = np.zeros((m, n + m + 1))
    tab[:, :n] = a
    tab[:, n : n + m] = np.eye(m)
    tab[:, -1] = b
    basis = list(range(n, n + m))
    # reduced costs of the artificial-sum objective
    cost = np.zeros(n + m + 1)
    cost[n : n + m] = 1.0
    cost -= tab.sum(axis=0)
    cost[n : n + m] = 0.0

    pivots = 0
    while True:
        entering = next((j for j in range(n + m) if cost[j] < -PIVOT_TOL), None)
        if entering is None:
            break
        col = tab[:, entering]
        rows = [i for i in range(m) if col[i] > PIVOT_TOL]
        if not rows:  # cannot happen: the phase-1 objective is bounded below by 0
            break
        ratio = min(tab[i, -1] / col[i] for i in rows)
        leave = min(
            (i for i in rows if tab[i, -1] / col[i] <= ratio + PIVOT_TOL),
            key=lambda i: basis[i],
        )
        tab[leave] /= tab[leave, entering]
        for i in range(m):
            if i != leave and tab[i, entering] != 0.0:
                tab[i] -= tab[i, entering] * tab[leave]
        cost -= cost[entering] * tab[leave]
        basis[leave] = entering
        pivots += 1
        if pivots >= max_pivots:
            raise RuntimeError("phase-1 simplex exceeded its pivot budget")

    x = np.zeros(n + m)
    for i, j in enumerate(basis):
        x[j] = tab[i, -1]
    infeasibility = float(np.sum(x[n:]))
    feasible = infeasibility <= tol
    return FeasibilityResult(feasible, x[:n].copy() if feasible else None, infeasibility, pivots)
