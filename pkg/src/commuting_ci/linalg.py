"""Exact rank computation for the graded-slice matrices.

Two coefficient regimes:

* GF(p): plain Gaussian elimination.  Small matrices go through a dense
  numpy routine (int64 entries; products stay far below 2**63), large ones
  through a sparse dict-of-rows elimination with a Markowitz-style pivot
  choice to limit fill-in.

* rationals: fraction-free elimination on integer rows (denominators are
  cleared per row first).  The dense path is Bareiss; the sparse path uses
  cross-multiplication updates with gcd stripping, so no fractions ever
  appear.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence

import numpy as np

Row = Dict[int, int]

#: Matrices with at most this many entries use the dense code paths.
DENSE_CUTOFF = 1_500_000


def rank_mod_p(rows: Sequence[Dict[int, int]], ncols: int, p: int) -> int:
    rows = [r for r in rows if r]
    if not rows or ncols == 0:
        return 0
    if len(rows) * ncols <= DENSE_CUTOFF:
        return _rank_mod_p_dense(rows, ncols, p)
    return _rank_sparse(rows, p=p)


def rank_rational(rows: Sequence[Dict[int, Fraction]], ncols: int) -> int:
    cleared: List[Row] = []
    for r in rows:
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        row = {c: int(v * den) for c, v in r.items()}
        row = {c: v for c, v in row.items() if v}
        if row:
            cleared.append(row)
    if not cleared or ncols == 0:
        return 0
    if len(cleared) * ncols <= DENSE_CUTOFF and len(cleared) <= 400:
        return _rank_bareiss(cleared, ncols)
    return _rank_sparse(cleared, p=None)


def _rank_mod_p_dense(rows: Sequence[Dict[int, int]], ncols: int, p: int) -> int:
    m = len(rows)
    A = np.zeros((m, ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            A[i, c] = v % p
    rank = 0
    for col in range(ncols):
        if rank == m:
            break
        sub = A[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        below = A[rank + 1 :, col]
        mask = below != 0
        if mask.any():
            A[rank + 1 :][mask] = (
                A[rank + 1 :][mask] - below[mask, None] * A[rank][None, :]
            ) % p
        rank += 1
    return rank


def _rank_bareiss(rows: Sequence[Row], ncols: int) -> int:
    A = [[r.get(c, 0) for c in range(ncols)] for r in rows]
    m = len(A)
    rank = 0
    prev = 1
    col = 0
    while rank < m and col < ncols:
        piv = None
        for i in range(rank, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        if piv != rank:
            A[rank], A[piv] = A[piv], A[rank]
        pv = A[rank][col]
        for i in range(rank + 1, m):
            vi = A[i][col]
            rowi = A[i]
            rowp = A[rank]
            for j in range(col, ncols):
                rowi[j] = (pv * rowi[j] - vi * rowp[j]) // prev
        prev = pv
        rank += 1
        col += 1
    return rank


def _rank_sparse(rows: Sequence[Row], p) -> int:
    """Sparse elimination; exact over GF(p) (p given) or Z (p None)."""
    work: List[Row] = [dict(r) for r in rows if r]
    colrows: Dict[int, set] = {}
    for i, r in enumerate(work):
        for c in r:
            colrows.setdefault(c, set()).add(i)
    alive = set(range(len(work)))
    heap = [(len(r), i) for i, r in enumerate(work)]
    heapq.heapify(heap)
    rank = 0
    while heap:
        nnz, i = heapq.heappop(heap)
        if i not in alive:
            continue
        row = work[i]
        if not row:
            alive.discard(i)
            continue
        if len(row) != nnz:  # stale entry, requeue with the current size
            heapq.heappush(heap, (len(row), i))
            continue
        # Markowitz-style: within the sparsest row, pivot on the emptiest column
        pc = min(row, key=lambda c: (len(colrows[c]), c))
        alive.discard(i)
        rank += 1
        pa = row[pc]
        targets = [j for j in colrows[pc] if j != i and j in alive]
        if p is not None:
            inv = pow(pa, p - 2, p)
            piv_items = [(c, v * inv % p) for c, v in row.items()]
            for j in targets:
                rj = work[j]
                f = rj.get(pc)
                if not f:
                    continue
                for c, v in piv_items:
                    old = rj.get(c)
                    nv = ((old or 0) - f * v) % p
                    if nv:
                        rj[c] = nv
                        if old is None:
                            colrows.setdefault(c, set()).add(j)
                    elif old is not None:
                        del rj[c]
                        colrows[c].discard(j)
                if rj:
                    heapq.heappush(heap, (len(rj), j))
                else:
                    alive.discard(j)
        else:
            piv_items = list(row.items())
            for j in targets:
                rj = work[j]
                f = rj.get(pc)
                if not f:
                    continue
                g = 0
                for c, v in piv_items:
                    old = rj.get(c)
                    nv = (old or 0) * pa - f * v
                    if nv:
                        rj[c] = nv
                        if old is None:
                            colrows.setdefault(c, set()).add(j)
                    elif old is not None:
                        del rj[c]
                        colrows[c].discard(j)
                for c, v in list(rj.items()):
                    if c not in row:
                        rj[c] = v * pa
                # strip content to keep the integers small
                for v in rj.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for c in rj:
                        rj[c] //= g
                if rj:
                    heapq.heappush(heap, (len(rj), j))
                else:
                    alive.discard(j)
        # retire the pivot row from the column index
        for c in row:
            colrows[c].discard(i)
    return rank
