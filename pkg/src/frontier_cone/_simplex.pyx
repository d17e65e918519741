# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex pivot loop.

Same contract as ``_simplex_py.pivot_loop``; see that module for the
reference semantics.  Arithmetic is kept operation-for-operation identical
to the NumPy fallback so both backends follow the same pivot path.
"""


def pivot_loop(double[:, ::1] tab, long long[::1] basis, Py_ssize_t n_enter,
               double tol, long long max_iter):
    cdef Py_ssize_t m = tab.shape[0] - 1
    cdef Py_ssize_t ncols = tab.shape[1]
    cdef Py_ssize_t rhs = ncols - 1
    cdef Py_ssize_t i, j, k, r, enter
    cdef double piv, f, ratio, rmin
    cdef long long it = 0

    while it < max_iter:
        # Bland entering rule: lowest-index improving column.
        enter = -1
        for j in range(n_enter):
            if tab[m, j] < -tol:
                enter = j
                break
        if enter == -1:
            return 0, it

        # Ratio test; ties broken by lowest basis-variable index.
        r = -1
        rmin = 0.0
        for i in range(m):
            if tab[i, enter] > tol:
                ratio = tab[i, rhs] / tab[i, enter]
                if r == -1 or ratio < rmin or (ratio == rmin and basis[i] < basis[r]):
                    r = i
                    rmin = ratio
        if r == -1:
            return 1, it

        piv = tab[r, enter]
        for k in range(ncols):
            tab[r, k] = tab[r, k] / piv
        tab[r, enter] = 1.0
        for i in range(m + 1):
            if i != r:
                f = tab[i, enter]
                for k in range(ncols):
                    tab[i, k] = tab[i, k] - f * tab[r, k]
                tab[i, enter] = 0.0
        basis[r] = enter
        it += 1

    return 2, it
