"""Small exact linear algebra over any field-like elements (FieldElement or
RatFunc): Gaussian elimination, rank, nullspace, solving. Rows are lists."""

from __future__ import annotations


def _row_echelon(rows, ncols, one, reduce_up=True):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        rng = range(len(rows)) if reduce_up else range(r + 1, len(rows))
        for i in rng:
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows, ncols, one):
    if not rows:
        return 0
    _, pivots = _row_echelon(rows, ncols, one, reduce_up=False)
    return len(pivots)


def nullspace(rows, ncols, zero, one):
    """Basis of the right nullspace of the matrix given by rows."""
    ech, pivots = _row_echelon(rows, ncols, one)
    piv_set = set(pivots)
    free = [c for c in range(ncols) if c not in piv_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -ech[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols, zero, one):
    """One solution of A x = b or None; A given by rows, b a column list."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = _row_echelon(aug, ncols, one)
    for row in ech:
        if all(x.is_zero() for x in row[:ncols]) and not row[ncols].is_zero():
            return None
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        if pc < ncols:
            x[pc] = ech[r][ncols]
    return x
