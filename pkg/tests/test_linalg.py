from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from momentangle.complex import barycentric_subdivision, bits_of, popcount
from momentangle.library import boundary_simplex
from momentangle.linalg import (ChainComplexError, SparseMatrix, betti_from_pair, dense_rank,
                                in_column_span, rank, rank_many)


def cycle_boundary():
    """d: C_1 -> C_0 of the 6-cycle bs(boundary of a triangle)."""
    B = barycentric_subdivision(boundary_simplex(2))
    verts = sorted(s for s in B.simplices if popcount(s) == 1)
    edges = sorted(s for s in B.simplices if popcount(s) == 2)
    pos = {v: i for i, v in enumerate(verts)}
    ent = {}
    for j, e in enumerate(edges):
        a, b = bits_of(e)
        ent[pos[1 << b], j] = 1
        ent[pos[1 << a], j] = -1
    return SparseMatrix(len(verts), len(edges), ent)


def test_empty_matrix():
    r = rank(SparseMatrix(0, 0))
    assert (r.rank, r.nullity) == (0, 0)


def test_identity():
    assert rank(SparseMatrix.identity(3)).rank == 3


def test_cycle_boundary_rank():
    d1 = cycle_boundary()
    assert rank(d1).rank == 5
    assert dense_rank(d1.to_dense()) == 5


def test_betti_zero_maps():
    assert betti_from_pair(SparseMatrix(5, 0), SparseMatrix(0, 5)) == 5


def test_betti_of_cycle():
    d1 = cycle_boundary()
    # degree 0: nothing leaves C_0, d1 comes in
    assert betti_from_pair(d1, SparseMatrix(0, 6)) == 1
    # degree 1: d1 leaves, nothing comes in
    assert betti_from_pair(SparseMatrix(6, 0), d1) == 1


def test_betti_rejects_non_complex():
    with pytest.raises(ChainComplexError):
        betti_from_pair(SparseMatrix.identity(2), SparseMatrix.identity(2))


def test_rank_with_fractions():
    M = SparseMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(M).rank == 1
    M = SparseMatrix.from_dense([[Fraction(1, 2), 0], [0, Fraction(2, 7)]])
    assert rank(M).rank == 2


def test_no_stored_zeros_and_bounds():
    M = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
    assert M.nnz == 1
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})


def random_matrix(rng, rows, cols, density, lo=-3, hi=3):
    ent = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                ent[r, c] = rng.randint(lo, hi)
    return SparseMatrix(rows, cols, ent)


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(150):
        M = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12), rng.random())
        expected = sympy.Matrix(M.to_dense()).rank() if M.rows and M.cols else 0
        assert rank(M).rank == expected
        assert dense_rank(M.to_dense()) == expected


def test_rank_of_low_rank_products():
    rng = random.Random(5)
    for _ in range(50):
        k = rng.randint(0, 5)
        A = random_matrix(rng, 10, k, 0.8, -9, 9)
        B = random_matrix(rng, k, 9, 0.8, -9, 9)
        M = A @ B
        assert rank(M).rank == sympy.Matrix(M.to_dense()).rank()


matrices = st.integers(1, 9).flatmap(lambda r: st.integers(1, 9).flatmap(
    lambda c: st.lists(st.integers(-2, 2), min_size=r * c, max_size=r * c).map(
        lambda vals: SparseMatrix(r, c, {(i // c, i % c): v for i, v in enumerate(vals)}))))


@settings(max_examples=200, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_rank_invariant_under_transpose_and_permutation(M, rnd):
    r = rank(M)
    assert r.rank + r.nullity == M.cols
    assert rank(M.transpose()).rank == r.rank
    rp = list(range(M.rows))
    cp = list(range(M.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    assert rank(M.permuted(rp, cp)).rank == r.rank


def test_rank_many_keeps_order():
    rng = random.Random(3)
    mats = [random_matrix(rng, 6, 6, 0.5) for _ in range(8)]
    expected = [rank(M).rank for M in mats]
    assert rank_many(mats, jobs=1) == expected
    assert rank_many(mats, jobs=2) == expected


def test_in_column_span():
    M = SparseMatrix.from_dense([[1, 0], [1, 0], [0, 1]])
    assert in_column_span(M, {0: 2, 1: 2})
    assert not in_column_span(M, {0: 1})
