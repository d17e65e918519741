"""Dense linear programs: maximize c'x subject to equality / <= rows, x >= 0.

Two-phase primal simplex on the standard-form tableau with Bland's
anti-cycling rule.  The pivot loop runs in a compiled Cython kernel when
available and in a pure-NumPy fallback otherwise; both follow the exact
same pivot path, so results do not depend on the backend.  Set
``FRONTIER_CONE_BACKEND=python`` to force the fallback.

Problem sizes here are a handful of rows by up to a few thousand columns,
well within dense-tableau range; determinism matters more than speed.
"""

import os
from dataclasses import dataclass

import numpy as np

from .errors import MalformedProgram

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

FEASIBILITY_TOL = 1e-9
OPTIMALITY_TOL = 1e-9
_MAX_PIVOTS = 200_000

try:  # pragma: no cover - exercised implicitly by the selected install
    from . import _simplex as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

from . import _simplex_py as _fallback

if os.environ.get("FRONTIER_CONE_BACKEND") == "python":
    _kernel = _fallback
elif _compiled is not None:
    _kernel = _compiled
else:
    _kernel = _fallback


def backend_name():
    """Name of the pivot-loop backend in use ('compiled' or 'python')."""
    return "compiled" if _kernel is _compiled and _compiled is not None else "python"


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective @ x  s.t.  eq_matrix @ x == eq_rhs,
    le_matrix @ x <= le_rhs, x >= 0."""

    objective: np.ndarray
    eq_matrix: np.ndarray = None
    eq_rhs: np.ndarray = None
    le_matrix: np.ndarray = None
    le_rhs: np.ndarray = None
    nonneg: bool = True


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: float
    primal: np.ndarray


def _as_block(matrix, rhs, ncols, label):
    if matrix is None and rhs is None:
        return np.zeros((0, ncols)), np.zeros(0)
    if matrix is None or rhs is None:
        raise MalformedProgram(f"{label} matrix and rhs must be given together")
    matrix = np.ascontiguousarray(matrix, dtype=np.float64)
    rhs = np.ascontiguousarray(rhs, dtype=np.float64)
    if matrix.ndim != 2 or rhs.ndim != 1:
        raise MalformedProgram(f"{label} block must be a 2-d matrix and 1-d rhs")
    if matrix.shape[1] != ncols:
        raise MalformedProgram(
            f"{label} matrix has {matrix.shape[1]} columns, objective has {ncols}"
        )
    if matrix.shape[0] != rhs.shape[0]:
        raise MalformedProgram(
            f"{label} rhs length {rhs.shape[0]} != row count {matrix.shape[0]}"
        )
    return matrix, rhs


def solve(lp, kernel=None):
    """Solve a LinearProgram; deterministic for identical input."""
    if kernel is None:
        kernel = _kernel
    if not lp.nonneg:
        raise MalformedProgram("only nonnegative-variable programs are supported")
    c = np.ascontiguousarray(lp.objective, dtype=np.float64)
    if c.ndim != 1 or c.size == 0:
        raise MalformedProgram("objective must be a nonempty vector")
    n = c.size
    a_eq, b_eq = _as_block(lp.eq_matrix, lp.eq_rhs, n, "equality")
    a_le, b_le = _as_block(lp.le_matrix, lp.le_rhs, n, "inequality")
    for arr in (c, a_eq, b_eq, a_le, b_le):
        if arr.size and not np.all(np.isfinite(arr)):
            raise MalformedProgram("nonfinite coefficient in program")

    n_eq, n_le = a_eq.shape[0], a_le.shape[0]
    m = n_eq + n_le
    if m == 0:
        # No constraints: x = 0 optimal unless some objective entry is positive.
        if np.any(c > OPTIMALITY_TOL):
            return LpSolution(UNBOUNDED, np.nan, None)
        return LpSolution(OPTIMAL, 0.0, np.zeros(n))

    # Rows: equalities first, then inequalities with slacks. Negate rows to
    # make every rhs nonnegative; negated <= rows lose their slack basis.
    body = np.zeros((m, n + n_le))
    rhs = np.concatenate([b_eq, b_le])
    body[:n_eq, :n] = a_eq
    body[n_eq:, :n] = a_le
    body[n_eq:, n:] = np.eye(n_le)
    neg = rhs < 0.0
    body[neg] *= -1.0
    rhs = np.abs(rhs)

    needs_art = np.ones(m, dtype=bool)
    needs_art[n_eq:] = neg[n_eq:]
    art_rows = np.flatnonzero(needs_art)
    n_art = art_rows.size

    n_enter = n + n_le
    basis = np.empty(m, dtype=np.int64)
    basis[~needs_art] = n + (np.flatnonzero(~needs_art) - n_eq)
    basis[needs_art] = n_enter + np.arange(n_art)

    tab = np.zeros((m + 1, n_enter + n_art + 1))
    tab[:m, :n_enter] = body
    tab[:m, -1] = rhs
    tab[np.arange(m)[needs_art], n_enter + np.arange(n_art)] = 1.0

    if n_art:
        # Phase 1: minimize the artificial sum.
        tab[m, n_enter:-1] = 1.0
        for i in art_rows:
            tab[m, :] -= tab[i, :]
        status, _ = kernel.pivot_loop(tab, basis, n_enter, OPTIMALITY_TOL, _MAX_PIVOTS)
        if status == 2:
            raise MalformedProgram("pivot limit exceeded in phase 1")
        if -tab[m, -1] > FEASIBILITY_TOL:
            return LpSolution(INFEASIBLE, np.nan, None)
        keep = _drive_out_artificials(tab, basis, n_enter)
        tab = np.ascontiguousarray(
            np.hstack([tab[keep][:, :n_enter], tab[keep][:, -1:]])
        )
        basis = basis[keep[:-1]]
        m = basis.size

    # Phase 2 objective row (minimize -c).
    obj = np.zeros(n_enter + 1)
    obj[:n] = -c
    for i in range(m):
        coef = obj[basis[i]]
        if coef != 0.0:
            obj -= coef * tab[i, :]
    tab[m, :] = obj

    status, _ = kernel.pivot_loop(tab, basis, n_enter, OPTIMALITY_TOL, _MAX_PIVOTS)
    if status == 2:
        raise MalformedProgram("pivot limit exceeded in phase 2")
    if status == 1:
        return LpSolution(UNBOUNDED, np.nan, None)

    x = np.zeros(n)
    in_decision = basis < n
    x[basis[in_decision]] = tab[:m, -1][in_decision]
    return LpSolution(OPTIMAL, float(c @ x), x)


def _drive_out_artificials(tab, basis, n_enter):
    """Pivot basic artificials onto structural columns; drop redundant rows.

    Returns the row indices (constraints then objective) kept for phase 2.
    """
    m = tab.shape[0] - 1
    keep = np.ones(m + 1, dtype=bool)
    for i in range(m):
        if basis[i] < n_enter:
            continue
        cols = np.flatnonzero(np.abs(tab[i, :n_enter]) > OPTIMALITY_TOL)
        if cols.size == 0:
            keep[i] = False  # redundant original row
            continue
        _pivot_once(tab, basis, i, int(cols[0]))
    return np.flatnonzero(keep)


def _pivot_once(tab, basis, r, enter):
    # Same arithmetic as the backend pivot so results stay backend-identical.
    piv = tab[r, enter]
    tab[r, :] = tab[r, :] / piv
    tab[r, enter] = 1.0
    factors = tab[:, enter].copy()
    factors[r] = 0.0
    tab -= factors[:, None] * tab[r, :][None, :]
    tab[:, enter] = 0.0
    tab[r, enter] = 1.0
    basis[r] = enter
