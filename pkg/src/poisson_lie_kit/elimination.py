"""Exact elimination: Bareiss fraction-free rank and a small Fraction RREF."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import QTensor


def row_reduce(rows: list[list[Fraction]], ncols: int | None = None):
    """Reduced row echelon form over the first ``ncols`` columns.

    Row operations are applied to whole rows, so an augmented block to the right
    of ``ncols`` records them.  Returns ``(rref_rows, pivot_columns)``.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _dedupe_rows(mat: np.ndarray) -> np.ndarray:
    """Drop zero rows and exact duplicates; neither changes the rank."""
    mat = mat[np.any(mat != 0, axis=1)]
    if mat.size == 0:
        return mat
    if mat.dtype == object:
        seen, keep = set(), []
        for row in mat:
            key = tuple(int(x) for x in row)
            if key not in seen:
                seen.add(key)
                keep.append(row)
        return np.array(keep, dtype=object)
    return np.unique(mat, axis=0)


def bareiss_rank(matrix, column_order: Sequence[int] | None = None, row_order: Sequence[int] | None = None) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Every division in the update is exact, so entries stay integers and bounded
    by minors of the input.  ``column_order``/``row_order`` permute the pivot
    search, which gives an independent elimination path for cross-checks.
    """
    mat = np.asarray(matrix)
    if column_order is not None:
        mat = mat[:, list(column_order)]
    if row_order is not None:
        mat = mat[list(row_order)]
    rows = [[int(x) for x in row] for row in mat]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    prev = 1
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        pc = p[c]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(pc * a - f * b) // prev for a, b in zip(ri, p)]
        prev = pc
        rank += 1
        if rank == m:
            break
    return rank


def exact_rank(tensor: QTensor, *, reverse: bool = False) -> int:
    """Rank of a 2-D rational matrix.

    The common denominator is irrelevant to rank, so the integer numerators are
    eliminated directly.  The matrix is oriented so that the short side indexes
    rows; ``reverse=True`` runs the pivot search in reversed column and row order.
    """
    num = tensor.num
    if num.ndim != 2:
        raise ValueError("exact_rank expects a matrix")
    if num.shape[0] > num.shape[1]:
        num = num.T
    # Rows now index the short side; deduplicate columns of the long side.
    num = _dedupe_rows(np.asarray(num).T).T if num.size else num
    if num.size == 0:
        return 0
    m, n = num.shape
    if reverse:
        return bareiss_rank(num, column_order=range(n - 1, -1, -1), row_order=range(m - 1, -1, -1))
    return bareiss_rank(num)
