"""Pure-NumPy simplex pivot loop (fallback when the compiled kernel is absent).

The tableau convention, shared with the compiled kernel:

* ``tab`` is ``(m+1, ncols)`` C-contiguous float64; the last column is the
  right-hand side and row ``m`` is the objective row of a minimization,
  holding reduced costs with ``tab[m, -1] == -z``.
* ``basis[i]`` is the column currently basic in row ``i``.
* Entering candidates are columns ``0..n_enter-1`` (artificials are placed
  after ``n_enter`` so they can never re-enter).
* Bland's rule throughout: lowest-index entering column; leaving row by
  minimum ratio with ties broken by lowest basis-variable index.

Returns ``(status, iterations)`` with status 0 = optimal, 1 = unbounded,
2 = iteration cap reached.
"""

import numpy as np


def pivot_loop(tab, basis, n_enter, tol, max_iter):
    m = tab.shape[0] - 1
    rhs = tab.shape[1] - 1
    it = 0

    while it < max_iter:
        improving = np.flatnonzero(tab[m, :n_enter] < -tol)
        if improving.size == 0:
            return 0, it
        enter = int(improving[0])

        col = tab[:m, enter]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            return 1, it
        ratios = tab[rows, rhs] / col[rows]
        rmin = ratios.min()
        tied = rows[ratios == rmin]
        r = int(tied[np.argmin(basis[tied])])

        piv = tab[r, enter]
        tab[r, :] = tab[r, :] / piv
        tab[r, enter] = 1.0
        factors = tab[:, enter].copy()
        factors[r] = 0.0
        tab -= factors[:, None] * tab[r, :][None, :]
        tab[:, enter] = 0.0
        tab[r, enter] = 1.0
        basis[r] = enter
        it += 1

    return 2, it
