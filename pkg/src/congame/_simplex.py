# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Dense simplex pivoting kernel.

This file is valid both as an importable Python module and as Cython "pure
Python mode" source. ``setup.py`` compiles it into the extension
``congame._simplex``; when the extension is absent the same file runs
interpreted. Both paths execute the identical sequence of double-precision
operations, so their results agree bit for bit (the build disables
floating-point contraction for this reason).

The kernel works on a maximization tableau of shape (n_rows+1, n_cols+1):
rows 0..n_rows-1 are constraints, row n_rows holds the reduced costs, column
n_cols holds the right-hand side, and cell [n_rows, n_cols] holds the negated
objective value. Entering and leaving variables follow Bland's rule, which
guarantees termination without anti-cycling perturbations.
"""

try:
    import cython
except ModuleNotFoundError:  # interpreted fallback without Cython installed
    class _TypeStub:
        def __getitem__(self, _key):
            return self

    class _CythonStub:
        compiled = False
        double = _TypeStub()
        Py_ssize_t = _TypeStub()

    cython = _CythonStub()

COMPILED = cython.compiled

# simplex_loop status codes
OPTIMAL = 0
UNBOUNDED = 2
NO_PIVOT = 3
ITERATION_LIMIT = 4


def eliminate_basics(tab: cython.double[:, ::1], basis: cython.Py_ssize_t[::1],
                     n_rows: cython.Py_ssize_t, n_cols: cython.Py_ssize_t):
    """Zero the cost row on basic columns by subtracting constraint rows.

    Assumes every basic column is a unit column, which construction and
    ``pivot`` both maintain.
    """
    r: cython.Py_ssize_t
    c: cython.Py_ssize_t
    f: cython.double
    for r in range(n_rows):
        f = tab[n_rows, basis[r]]
        if f != 0.0:
            for c in range(n_cols + 1):
                tab[n_rows, c] = tab[n_rows, c] - f * tab[r, c]
            tab[n_rows, basis[r]] = 0.0


def pivot(tab: cython.double[:, ::1], n_rows: cython.Py_ssize_t,
          n_cols: cython.Py_ssize_t, prow: cython.Py_ssize_t,
          pcol: cython.Py_ssize_t):
    """Gauss-Jordan pivot on (prow, pcol), including the cost row."""
    r: cython.Py_ssize_t
    c: cython.Py_ssize_t
    piv: cython.double
    f: cython.double
    piv = tab[prow, pcol]
    for c in range(n_cols + 1):
        tab[prow, c] = tab[prow, c] / piv
    tab[prow, pcol] = 1.0
    for r in range(n_rows + 1):
        if r == prow:
            continue
        f = tab[r, pcol]
        if f != 0.0:
            for c in range(n_cols + 1):
                tab[r, c] = tab[r, c] - f * tab[prow, c]
            tab[r, pcol] = 0.0


def simplex_loop(tab: cython.double[:, ::1], basis: cython.Py_ssize_t[::1],
                 n_rows: cython.Py_ssize_t, n_cols: cython.Py_ssize_t,
                 enter_limit: cython.Py_ssize_t, opt_tol: cython.double,
                 pivot_tol: cython.double, max_iter: cython.Py_ssize_t) -> int:
    """Pivot until no column with reduced cost above opt_tol remains.

    Only columns below ``enter_limit`` may enter the basis (artificials are
    laid out last and stay excluded). Returns OPTIMAL, UNBOUNDED (an
    improving column with no positive entry), NO_PIVOT (improving columns
    exist but every candidate pivot is below pivot_tol), or ITERATION_LIMIT.
    """
    it: cython.Py_ssize_t
    j: cython.Py_ssize_t
    r: cython.Py_ssize_t
    prow: cython.Py_ssize_t
    found_improving: cython.Py_ssize_t
    pivoted: cython.Py_ssize_t
    has_tiny: cython.Py_ssize_t
    a: cython.double
    ratio: cython.double
    best: cython.double

    for it in range(max_iter):
        found_improving = 0
        pivoted = 0
        for j in range(enter_limit):
            if tab[n_rows, j] <= opt_tol:
                continue
            found_improving = 1
            # Ratio test; ties broken by smallest basic variable index.
            prow = -1
            best = 0.0
            has_tiny = 0
            for r in range(n_rows):
                a = tab[r, j]
                if a > pivot_tol:
                    ratio = tab[r, n_cols] / a
                    if prow < 0 or ratio < best:
                        best = ratio
                        prow = r
                    elif ratio == best and basis[r] < basis[prow]:
                        prow = r
                elif a > 0.0:
                    has_tiny = 1
            if prow >= 0:
                pivot(tab, n_rows, n_cols, prow, j)
                basis[prow] = j
                pivoted = 1
                break
            if has_tiny == 0:
                return UNBOUNDED
            # Every candidate pivot in this column is below threshold; try
            # the next improving column before giving up.
        if found_improving == 0:
            return OPTIMAL
        if pivoted == 0:
            return NO_PIVOT
    return ITERATION_LIMIT


def drive_out(tab: cython.double[:, ::1], basis: cython.Py_ssize_t[::1],
              n_rows: cython.Py_ssize_t, n_cols: cython.Py_ssize_t,
              limit: cython.Py_ssize_t, pivot_tol: cython.double):
    """Pivot basic variables with index >= limit onto earlier columns.

    Used after phase 1 to remove artificials from the basis. A row whose
    entries below ``limit`` are all below threshold is redundant and is left
    alone; its artificial stays basic at value zero and the row is inert for
    the rest of the solve.
    """
    r: cython.Py_ssize_t
    j: cython.Py_ssize_t
    pcol: cython.Py_ssize_t
    a: cython.double
    mag: cython.double
    best: cython.double
    for r in range(n_rows):
        if basis[r] >= limit:
            pcol = -1
            best = pivot_tol
            for j in range(limit):
                a = tab[r, j]
                mag = -a if a < 0.0 else a
                if mag > best:
                    best = mag
                    pcol = j
            if pcol >= 0:
                pivot(tab, n_rows, n_cols, r, pcol)
                basis[r] = pcol
