"""Brute-force vertex-enumeration oracle for small linear programs.

Independent of the package solver: enumerates candidate active sets,
solves the square systems with numpy, filters by feasibility, and takes
the best objective.  Exponential in size; only for tiny test programs.
"""

from itertools import combinations

import numpy as np

FEAS_TOL = 1e-7


def enumerate_vertices(n, a_eq, b_eq, a_le, b_le):
    """Yield feasible basic points of {A_eq x = b_eq, A_le x <= b_le, x >= 0}."""
    rows = [((a_eq[i], b_eq[i])) for i in range(len(b_eq))]
    optional = [(a_le[i], b_le[i]) for i in range(len(b_le))]
    optional += [(-np.eye(n)[j], 0.0) for j in range(n)]
    need = n - len(rows)
    if need < 0:
        return
    seen = set()
    for extra in combinations(range(len(optional)), need):
        mat = np.array([r[0] for r in rows] + [optional[k][0] for k in extra])
        rhs = np.array([r[1] for r in rows] + [optional[k][1] for k in extra])
        if mat.shape[0] != n or abs(np.linalg.det(mat)) < 1e-12:
            continue
        x = np.linalg.solve(mat, rhs)
        if np.any(x < -FEAS_TOL):
            continue
        if len(b_le) and np.any(a_le @ x - b_le > FEAS_TOL):
            continue
        if len(b_eq) and np.any(np.abs(a_eq @ x - b_eq) > FEAS_TOL):
            continue
        key = tuple(np.round(x, 9))
        if key not in seen:
            seen.add(key)
            yield x


def best_vertex(c, a_eq, b_eq, a_le, b_le):
    """Max of c @ x over feasible vertices; None when no vertex is feasible."""
    c = np.asarray(c, dtype=float)
    n = c.size
    a_eq = np.zeros((0, n)) if a_eq is None else np.asarray(a_eq, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    a_le = np.zeros((0, n)) if a_le is None else np.asarray(a_le, dtype=float)
    b_le = np.zeros(0) if b_le is None else np.asarray(b_le, dtype=float)
    best = None
    for x in enumerate_vertices(n, a_eq, b_eq, a_le, b_le):
        value = float(c @ x)
        if best is None or value > best:
            best = value
    return best
