from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi.rat import Inconsistent, RowEchelonBasis, axpy, rank, solve_affine, vec

big = st.builds(Fraction, st.integers(-(2 ** 256), 2 ** 256), st.integers(1, 2 ** 256))
entry = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
sparse = st.dictionaries(st.integers(0, 6), entry.filter(bool), max_size=5)


def dense_rank(rows, ncols):
    # textbook Gaussian elimination on a dense copy
    m = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


@given(st.lists(sparse, max_size=8))
def test_rank_matches_dense_oracle(rows):
    assert rank(rows) == dense_rank(rows, 7)


@given(st.lists(sparse, max_size=6), st.permutations(range(7)))
def test_rank_independent_of_pivot_order(rows, perm):
    order = {c: perm[c] for c in range(7)}
    assert rank(rows, order) == rank(rows)


@given(st.lists(sparse, max_size=6), sparse)
def test_reduce_idempotent(rows, v):
    b = RowEchelonBasis()
    for r in rows:
        b.insert(r)
    once = b.reduce(v)
    assert b.reduce(once) == once
    assert not set(once) & set(b.rows)


@given(big, big)
def test_exact_arithmetic(a, b):
    assert (a + b) - b == a
    y = vec([(0, a)])
    axpy(y, 1, vec([(0, b)]))
    axpy(y, -1, vec([(0, b)]))
    assert y == vec([(0, a)])


@given(st.lists(sparse, min_size=1, max_size=6), sparse)
def test_solve_affine_solves_consistent_systems(rows, x):
    b = {}
    for i, r in enumerate(rows):
        s = sum(c * x.get(k, 0) for k, c in r.items())
        if s:
            b[i] = s
    sol = solve_affine(rows, b)
    for i, r in enumerate(rows):
        assert sum(c * sol.get(k, 0) for k, c in r.items()) == b.get(i, 0)


def test_solve_affine_detects_inconsistency():
    with pytest.raises(Inconsistent):
        solve_affine([{0: 1}, {0: 2}], {0: 1, 1: 1})


def test_vec_drops_zeros():
    assert vec([(0, 1), (0, -1), (2, Fraction(1, 2))]) == {2: Fraction(1, 2)}
