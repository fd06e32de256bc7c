"""Exact sparse Gaussian elimination over any field-like scalar type."""

from __future__ import annotations


def sparse_rank(rows, key=None) -> int:
    """Rank of a family of sparse vectors given as ``{column: value}`` dicts.

    Works for any exact scalar supporting ``+ - * /`` and truthiness
    (Fraction, Cyclotomic).  ``key`` orders columns for pivot choice.
    """
    pivots: dict = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = max(row, key=key) if key else max(row)
            if col not in pivots:
                pivots[col] = row
                break
            prow = pivots[col]
            f = row[col] / prow[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)
