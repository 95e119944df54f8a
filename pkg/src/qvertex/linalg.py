"""Gaussian elimination over Scalars, with sparse rows."""

from __future__ import annotations

from .scalars import ONE, ZERO, as_scalar


def row_reduce(rows, ncols=None):
    """Reduced row echelon form of sparse rows (dicts col -> Scalar).

    Returns (reduced rows, pivot columns) in pivot order.
    """
    pivots = []
    basis = []  # list of (pivot col, row dict) with pivot entry 1
    for row in rows:
        r = {k: as_scalar(v) for k, v in row.items() if v}
        for col, brow in basis:
            c = r.get(col)
            if c:
                for k, v in brow.items():
                    nv = r.get(k, ZERO) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        col = min(r)
        inv = r[col].inverse()
        r = {k: v * inv for k, v in r.items()}
        # clear this column from the earlier rows
        for i, (pc, brow) in enumerate(basis):
            c = brow.get(col)
            if c:
                for k, v in r.items():
                    nv = brow.get(k, ZERO) - c * v
                    if nv:
                        brow[k] = nv
                    else:
                        brow.pop(k, None)
        basis.append((col, r))
        pivots.append(col)
    return [r for _, r in basis], pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1])


def solve(equations, unknowns):
    """Solve sum_j a_j x_j = b for each (coeff dict, b) pair.

    Returns (solution dict, status) where status is "ok", "inconsistent" or
    "underdetermined".  The solution sets free variables to zero.
    """
    rows = []
    order = {u: i for i, u in enumerate(unknowns)}
    for coeffs, b in equations:
        row = {order[u]: v for u, v in coeffs.items() if v}
        if b:
            row[len(order)] = as_scalar(b)
        if row:
            rows.append(row)
    reduced, pivots = row_reduce(rows)
    n = len(order)
    sol = {u: ZERO for u in unknowns}
    status = "ok"
    for r, p in zip(reduced, pivots):
        if p == n:
            return sol, "inconsistent"
        sol[unknowns[p]] = r.get(n, ZERO)
        if any(k != p and k != n for k in r):
            status = "underdetermined"
    if len(pivots) < n:
        status = "underdetermined"
    return sol, status


def nullspace(rows, ncols):
    """Basis of the right kernel of a sparse matrix with ncols columns."""
    reduced, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        vec = {f: ONE}
        for r, p in zip(reduced, pivots):
            c = r.get(f)
            if c:
                vec[p] = -c
        out.append(vec)
    return out
