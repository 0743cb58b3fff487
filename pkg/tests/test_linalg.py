"""Exact rank routines against straightforward Fraction elimination."""

import random
from fractions import Fraction

import pytest

from commuting_ci import linalg


def _rank_fraction_oracle(rows, ncols):
    M = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(M)):
            if M[i][col]:
                piv = i
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pv = M[rank][col]
        M[rank] = [v / pv for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _random_rows(rng, nrows, ncols, density=0.4, lo=-5, hi=5):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(lo, hi)
                if v:
                    row[c] = v
        rows.append(row)
    return rows


@pytest.mark.parametrize("trial", range(12))
def test_rank_mod_p_matches_oracle(trial):
    rng = random.Random(100 + trial)
    p = 32003
    nrows, ncols = rng.randint(1, 12), rng.randint(1, 12)
    rows = _random_rows(rng, nrows, ncols)
    reduced = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    # small random integers stay far from p, so ranks over Q and GF(p) agree
    assert linalg.rank_mod_p(reduced, ncols, p) == _rank_fraction_oracle(rows, ncols)


@pytest.mark.parametrize("trial", range(12))
def test_rank_rational_matches_oracle(trial):
    rng = random.Random(200 + trial)
    nrows, ncols = rng.randint(1, 12), rng.randint(1, 12)
    rows = _random_rows(rng, nrows, ncols)
    assert linalg.rank_rational(rows, ncols) == _rank_fraction_oracle(rows, ncols)


def test_rank_rational_with_fractions():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: Fraction(3, 2), 1: Fraction(1, 1)}]
    assert linalg.rank_rational(rows, 2) == _rank_fraction_oracle(rows, 2)


def test_sparse_paths_match_dense(monkeypatch):
    rng = random.Random(300)
    p = 32003
    rows = _random_rows(rng, 30, 40)
    reduced = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    expected_p = linalg.rank_mod_p(reduced, 40, p)
    expected_q = linalg.rank_rational(rows, 40)
    monkeypatch.setattr(linalg, "DENSE_CUTOFF", 0)
    assert linalg.rank_mod_p(reduced, 40, p) == expected_p
    assert linalg.rank_rational(rows, 40) == expected_q


def test_rank_handles_duplicates_and_zeros():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {}, {0: 1, 1: 2}]
    assert linalg.rank_mod_p(rows, 2, 7) == 1
    assert linalg.rank_rational(rows, 2) == 1


def test_rank_of_structured_low_rank():
    # outer product u v^T has rank 1 regardless of size
    rng = random.Random(5)
    u = [rng.randint(1, 9) for _ in range(25)]
    v = [rng.randint(1, 9) for _ in range(30)]
    rows = [{j: u[i] * v[j] for j in range(30)} for i in range(25)]
    assert linalg.rank_rational(rows, 30) == 1
    assert linalg.rank_mod_p([{c: val % 13 for c, val in r.items()} for r in rows], 30, 13) == 1
