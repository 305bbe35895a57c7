"""Exact rank over the rationals by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """Rank of an integer or rational matrix, computed without leaving the integers.

    Every intermediate entry is a minor of the input, so the divisions by the
    previous pivot are exact.
    """
    a = _integer_rows(matrix)
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    prev = 1
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        piv_row = a[rank]
        p = piv_row[col]
        for r in range(rank + 1, n_rows):
            row = a[r]
            f = row[col]
            for c in range(col + 1, n_cols):
                row[c] = (p * row[c] - f * piv_row[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank
