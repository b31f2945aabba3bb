"""GF(2) linear algebra on int bitsets (little-endian column indexing)."""

from __future__ import annotations


def solve_f2(rows, rhs, ncols):
    """One solution x (as a bitmask over ncols columns) of A x = b over
    GF(2), or None. rows are int bitmasks, rhs a list of 0/1 bits."""
    aug = [(r | (b << ncols)) for r, b in zip(rows, rhs)]
    pivots = []
    nrows = len(aug)
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, nrows):
            if (aug[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        aug[row_idx], aug[pivot] = aug[pivot], aug[row_idx]
        for r in range(nrows):
            if r != row_idx and ((aug[r] >> col) & 1):
                aug[r] ^= aug[row_idx]
        pivots.append(col)
        row_idx += 1
        if row_idx == nrows:
            break
    mask = (1 << ncols) - 1
    for r in range(row_idx, nrows):
        if (aug[r] & mask) == 0 and (aug[r] >> ncols) & 1:
            return None
    x = 0
    for r, col in enumerate(pivots):
        if (aug[r] >> ncols) & 1:
            x |= 1 << col
    # consistency of reduced rows above row_idx is guaranteed by full
    # reduction; check the remaining ones too
    for r in range(row_idx):
        acc = bin(aug[r] & mask & x).count("1") & 1
        if acc != (aug[r] >> ncols) & 1:
            return None
    return x


def rank_f2(rows, ncols):
    work = list(rows)
    rank = 0
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank
