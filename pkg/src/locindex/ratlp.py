"""Exact linear programming over the rationals.

Two-phase primal simplex on a dense tableau of Fractions. Bland's rule
picks entering and leaving variables, which guarantees termination with
no tolerance tuning; every comparison is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InfeasibleError, ToolkitError

ZERO = Fraction(0)
ONE = Fraction(1)


class UnboundedError(ToolkitError):
    """LP objective is unbounded below."""


def _pivot(rows, rhs, cost, cost_shift, basis, prow, pcol):
    piv = rows[prow][pcol]
    inv = ONE / piv
    rows[prow] = [a * inv for a in rows[prow]]
    rhs[prow] = rhs[prow] * inv
    base = rows[prow]
    brhs = rhs[prow]
    for r in range(len(rows)):
        if r != prow and rows[r][pcol] != 0:
            f = rows[r][pcol]
            rows[r] = [a - f * b for a, b in zip(rows[r], base)]
            rhs[r] = rhs[r] - f * brhs
    if cost[pcol] != 0:
        f = cost[pcol]
        for j in range(len(cost)):
            cost[j] = cost[j] - f * base[j]
        cost_shift[0] = cost_shift[0] - f * brhs
    basis[prow] = pcol


def _run_simplex(rows, rhs, cost, cost_shift, basis, allowed):
    """Iterate Bland-rule pivots until optimal; raises UnboundedError."""
    ncols = len(cost)
    while True:
        entering = None
        for j in range(ncols):
            if allowed[j] and cost[j] < 0:
                entering = j
                break
        if entering is None:
            return
        leaving = None
        best_ratio = None
        for r in range(len(rows)):
            a = rows[r][entering]
            if a > 0:
                ratio = rhs[r] / a
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[r] < basis[leaving]):
                    best_ratio = ratio
                    leaving = r
        if leaving is None:
            raise UnboundedError("linear program is unbounded")
        _pivot(rows, rhs, cost, cost_shift, basis, leaving, entering)


def solve_lp(objective, eq_rows=(), eq_rhs=(), ub_rows=(), ub_rhs=()):
    """Minimize objective . x subject to eq_rows x = eq_rhs, ub_rows x <= ub_rhs, x >= 0.

    All data is converted to Fractions. Returns (value, x) at an optimal
    basic solution. Raises InfeasibleError or UnboundedError.
    """
    objective = [Fraction(c) for c in objective]
    n = len(objective)
    eq_rows = [[Fraction(a) for a in row] for row in eq_rows]
    ub_rows = [[Fraction(a) for a in row] for row in ub_rows]
    eq_rhs = [Fraction(b) for b in eq_rhs]
    ub_rhs = [Fraction(b) for b in ub_rhs]
    if len(eq_rows) != len(eq_rhs) or len(ub_rows) != len(ub_rhs):
        raise ValueError("constraint row/rhs length mismatch")
    for row in eq_rows + ub_rows:
        if len(row) != n:
            raise ValueError("constraint width does not match objective")

    nslack = len(ub_rows)
    rows = []
    rhs = []
    for row, b in zip(eq_rows, eq_rhs):
        rows.append(row + [ZERO] * nslack)
        rhs.append(b)
    for k, (row, b) in enumerate(zip(ub_rows, ub_rhs)):
        slack = [ZERO] * nslack
        slack[k] = ONE
        rows.append(row + slack)
        rhs.append(b)
    for r in range(len(rows)):
        if rhs[r] < 0:
            rows[r] = [-a for a in rows[r]]
            rhs[r] = -rhs[r]

    width = n + nslack
    basis = []
    artificial_of_row = {}
    for r in range(len(rows)):
        # a ub-row whose slack kept coefficient +1 can start basic
        slack_col = None
        if r >= len(eq_rows):
            k = r - len(eq_rows)
            if rows[r][n + k] == ONE:
                slack_col = n + k
        if slack_col is not None:
            basis.append(slack_col)
        else:
            artificial_of_row[r] = width
            basis.append(width)
            width += 1
    nart = width - n - nslack
    if nart:
        for r in range(len(rows)):
            ext = [ZERO] * nart
            if r in artificial_of_row:
                ext[artificial_of_row[r] - n - nslack] = ONE
            rows[r] = rows[r] + ext

    allowed = [True] * width

    # phase 1: drive artificials to zero
    if nart:
        cost = [ZERO] * (n + nslack) + [ONE] * nart
        cost_shift = [ZERO]
        for r, col in enumerate(basis):
            if cost[col] != 0:
                f = cost[col]
                for j in range(width):
                    cost[j] = cost[j] - f * rows[r][j]
                cost_shift[0] = cost_shift[0] - f * rhs[r]
        _run_simplex(rows, rhs, cost, cost_shift, basis, allowed)
        if -cost_shift[0] != 0:
            raise InfeasibleError("linear program is infeasible")
        # remove artificials from the basis where possible
        r = 0
        while r < len(rows):
            if basis[r] >= n + nslack:
                pcol = None
                for j in range(n + nslack):
                    if rows[r][j] != 0:
                        pcol = j
                        break
                if pcol is None:
                    del rows[r], rhs[r], basis[r]
                    continue
                _pivot(rows, rhs, cost, cost_shift, basis, r, pcol)
            r += 1
        for j in range(n + nslack, width):
            allowed[j] = False

    # phase 2
    cost = objective + [ZERO] * (width - n)
    cost_shift = [ZERO]
    for r, col in enumerate(basis):
        if cost[col] != 0:
            f = cost[col]
            for j in range(width):
                cost[j] = cost[j] - f * rows[r][j]
            cost_shift[0] = cost_shift[0] - f * rhs[r]
    _run_simplex(rows, rhs, cost, cost_shift, basis, allowed)

    x = [ZERO] * n
    for r, col in enumerate(basis):
        if col < n:
            x[col] = rhs[r]
    value = sum((c * v for c, v in zip(objective, x)), ZERO)
    return value, tuple(x)
