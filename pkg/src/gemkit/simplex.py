"""Dense two-phase simplex for small LPs.

Used by the certificate checker (flow feasibility) and by the guarded
internal branch-and-bound solver.  Bland's rule everywhere, so the method
cannot cycle; determinism is preferred over speed, which is fine for the
dense desk-scale systems this package solves internally.  Larger models are
meant for external MILP backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_TOL = 1e-9


@dataclass
class SimplexResult:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None


# =============================================================================
def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None,
             maximize=False) -> SimplexResult:
    """Solve  min/max c'x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  l <= x <= u.

    Parameters
    ----------
    c : array of length n
        Objective coefficients.
    A_ub, b_ub : optional inequality block.
    A_eq, b_eq : optional equality block.
    bounds : list of (lo, hi) pairs, one per variable.  ``None`` entries mean
        unbounded on that side; default is (0, None).
    maximize : flip the optimization sense.

    Returns
    -------
    SimplexResult
        status 'optimal' (with x and objective in the original variables),
        'infeasible', or 'unbounded'.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    if bounds is None:
        bounds = [(0.0, None)] * n
    if maximize:
        c = -c

    A_rows = []
    rhs = []
    senses = []  # 'L' or 'E'
    if A_ub is not None and len(np.atleast_2d(A_ub)) and np.size(A_ub):
        A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
        for row, b in zip(A_ub, np.atleast_1d(b_ub)):
            A_rows.append(np.asarray(row, dtype=float))
            rhs.append(float(b))
            senses.append("L")
    if A_eq is not None and np.size(A_eq):
        A_eq = np.atleast_2d(np.asarray(A_eq, dtype=float))
        for row, b in zip(A_eq, np.atleast_1d(b_eq)):
            A_rows.append(np.asarray(row, dtype=float))
            rhs.append(float(b))
            senses.append("E")

    # Variable transform: shift finite lower bounds to 0, split free
    # variables, and register finite upper bounds as extra <= rows.
    # col_map[i] = (plus_col, minus_col or None, shift)
    col_map = []
    n_cols = 0
    ub_rows = []  # (col, value) in transformed space
    for i, (lo, hi) in enumerate(bounds):
        if lo is not None and np.isfinite(lo):
            col_map.append((n_cols, None, float(lo)))
            if hi is not None and np.isfinite(hi):
                if hi < lo - 1e-12:
                    return SimplexResult(status=INFEASIBLE)
                ub_rows.append((n_cols, float(hi) - float(lo)))
            n_cols += 1
        else:
            minus = n_cols + 1
            col_map.append((n_cols, minus, 0.0))
            if hi is not None and np.isfinite(hi):
                ub_rows.append((n_cols, float(hi)))  # x+ - x- <= hi handled below
            n_cols += 2

    m = len(A_rows) + len(ub_rows)
    A = np.zeros((m, n_cols))
    b = np.zeros(m)
    sense_all = []
    for r, (row, bv, sn) in enumerate(zip(A_rows, rhs, senses)):
        shift = 0.0
        for i in range(n):
            plus, minus, lo = col_map[i]
            if row[i] != 0.0:
                A[r, plus] = row[i]
                if minus is not None:
                    A[r, minus] = -row[i]
                shift += row[i] * lo
        b[r] = bv - shift
        sense_all.append(sn)
    for k, (col, val) in enumerate(ub_rows):
        r = len(A_rows) + k
        A[r, col] = 1.0
        plus, minus, _ = next(cm for cm in col_map if cm[0] == col)
        if minus is not None:
            A[r, minus] = -1.0
        b[r] = val
        sense_all.append("L")

    c_t = np.zeros(n_cols)
    for i in range(n):
        plus, minus, _ = col_map[i]
        c_t[plus] = c[i]
        if minus is not None:
            c_t[minus] = -c[i]
    const_term = sum(c[i] * col_map[i][2] for i in range(n))

    status, x_t, obj_t = _two_phase(A, b, sense_all, c_t)
    if status != OPTIMAL:
        return SimplexResult(status=status)

    x = np.empty(n)
    for i in range(n):
        plus, minus, lo = col_map[i]
        x[i] = x_t[plus] + lo - (x_t[minus] if minus is not None else 0.0)
    obj = obj_t + const_term
    if maximize:
        obj = -obj
    return SimplexResult(status=OPTIMAL, x=x, objective=obj)


# =============================================================================
def _two_phase(A, b, senses, c):
    """Standard-form driver: rows are 'L' or 'E', variables >= 0."""
    m, n = A.shape
    if m == 0:
        # Nothing binds: optimum at the origin unless some cost is negative.
        if np.any(c < -_TOL):
            return UNBOUNDED, None, None
        return OPTIMAL, np.zeros(n), 0.0

    # Slacks for <= rows; then normalize rhs signs; artificials where the
    # slack cannot serve as the initial basis column.
    n_slack = sum(1 for s in senses if s == "L")
    T = np.zeros((m, n + n_slack))
    T[:, :n] = A
    rhs = b.astype(float).copy()
    slack_of_row = {}
    j = n
    for r, s in enumerate(senses):
        if s == "L":
            T[r, j] = 1.0
            slack_of_row[r] = j
            j += 1
    for r in range(m):
        if rhs[r] < 0:
            T[r] *= -1.0
            rhs[r] *= -1.0

    basis = np.full(m, -1, dtype=int)
    need_artificial = []
    for r in range(m):
        sj = slack_of_row.get(r)
        if sj is not None and T[r, sj] > 0:
            basis[r] = sj
        else:
            need_artificial.append(r)

    n_total = T.shape[1]
    n_art = len(need_artificial)
    if n_art:
        T = np.hstack([T, np.zeros((m, n_art))])
        for k, r in enumerate(need_artificial):
            T[r, n_total + k] = 1.0
            basis[r] = n_total + k

    tab = np.hstack([T, rhs[:, None]])

    if n_art:
        obj = np.zeros(tab.shape[1])
        art_cols = set(range(n_total, n_total + n_art))
        obj[n_total : n_total + n_art] = 1.0
        objrow = obj.copy()
        for r in range(m):
            if basis[r] in art_cols:
                objrow -= tab[r]
        status = _iterate(tab, basis, objrow)
        if status == UNBOUNDED:  # phase 1 is bounded below by 0
            return INFEASIBLE, None, None
        phase1_val = -objrow[-1]
        if phase1_val > 1e-7:
            return INFEASIBLE, None, None
        # Drive leftover artificials out of the basis or drop their rows.
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] in art_cols:
                pivot_col = None
                for jj in range(n_total):
                    if abs(tab[r, jj]) > 1e-9:
                        pivot_col = jj
                        break
                if pivot_col is None:
                    keep[r] = False
                else:
                    _pivot(tab, basis, r, pivot_col)
        if not keep.all():
            tab = tab[keep]
            basis = basis[keep]
            m = tab.shape[0]
        tab = np.hstack([tab[:, :n_total], tab[:, -1:]])

    # Phase 2.
    obj = np.zeros(tab.shape[1])
    obj[:n] = c
    objrow = obj.copy()
    for r in range(m):
        if obj[basis[r]] != 0.0:
            objrow -= obj[basis[r]] * tab[r]
    status = _iterate(tab, basis, objrow)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = np.zeros(tab.shape[1] - 1)
    for r in range(m):
        x[basis[r]] = tab[r, -1]
    return OPTIMAL, x[:n], float(c @ x[:n])


def _iterate(tab, basis, objrow):
    """Bland-rule simplex iterations on an aligned tableau; mutates in place."""
    m = tab.shape[0]
    while True:
        reduced = objrow[:-1]
        entering = -1
        for j in range(reduced.size):
            if reduced[j] < -_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        col = tab[:, entering]
        best_ratio = np.inf
        leave = -1
        for r in range(m):
            if col[r] > _TOL:
                ratio = tab[r, -1] / col[r]
                if ratio < best_ratio - 1e-12 or (
                    abs(ratio - best_ratio) <= 1e-12
                    and (leave < 0 or basis[r] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = r
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, entering)
        objrow -= objrow[entering] * tab[leave]


def _pivot(tab, basis, row, col):
    tab[row] /= tab[row, col]
    piv = tab[row]
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            tab[r] -= tab[r, col] * piv
    basis[row] = col
