"""Exact Gaussian elimination over a coefficient field."""
from __future__ import annotations


def solve(rows, rhs, nvars, zero, one):
    """Solve sum_k rows[i][k] x_k = rhs[i].

    ``rows`` is a list of sparse dicts {column: value}.  Returns a list of
    values (free variables set to zero) or ``None`` when inconsistent.
    """
    eqs = [(dict(r), b) for r, b in zip(rows, rhs)]
    pivots = []  # (col, row dict, rhs)
    for r, b in eqs:
        # reduce against existing pivots
        for col, prow, pb in pivots:
            f = r.get(col)
            if f:
                for k, v in prow.items():
                    nv = r.get(k, zero) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                b = b - f * pb
        if not r:
            if b:
                return None
            continue
        col = min(r)
        inv = one / r[col]
        r = {k: v * inv for k, v in r.items()}
        b = b * inv
        # keep pivot rows fully reduced
        new = []
        for pcol, prow, pb in pivots:
            f = prow.get(col)
            if f:
                prow = dict(prow)
                for k, v in r.items():
                    nv = prow.get(k, zero) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                pb = pb - f * b
            new.append((pcol, prow, pb))
        new.append((col, r, b))
        pivots = new
    x = [zero] * nvars
    for col, prow, pb in pivots:
        x[col] = pb
    return x
