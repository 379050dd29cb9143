from fractions import Fraction

import pytest
from hypothesis import given

from jacobi import diagram as dg
from jacobi import maps as M
from jacobi.spaces import (A, AARROW, AARROW_MINUS, AARROW_PLUS, ACHORD, MMINUS, MPLUS,
                           POLYAK_ACYCLIC, POLYAK_CHORD, FormalSum, generate_relations, space,
                           restricted, verma)
from jacobi.rat import rank

from conftest import formal_sums, small_q

CASES = [
    (A, ("I",), 3), (A, ("O",), 3), (A, ("I", "I"), 2), (A, ("*",), 3), (A, ("I", "*"), 2),
    (ACHORD, ("I",), 3), (ACHORD, ("O", "O"), 2),
    (AARROW, ("I",), 2), (AARROW, ("O",), 2), (AARROW, ("I", "I"), 2),
    (AARROW_PLUS, ("I",), 2), (AARROW_MINUS, ("I",), 2),
    (MPLUS, ("I",), 2), (MMINUS, ("I",), 2), (verma(("+", "-")), ("I", "I"), 2),
    (POLYAK_CHORD, ("I",), 3), (POLYAK_ACYCLIC, ("I",), 2),
]


@pytest.mark.parametrize("rs,skel,cap", CASES, ids=lambda x: getattr(x, "name", str(x)))
def test_relations_reduce_to_zero(rs, skel, cap):
    q = space(skel, cap, rs)
    for m in range(cap + 1):
        for rel in generate_relations(skel, m, rs):
            assert q.is_zero(rel)


def test_circle_dimensions_two_routes():
    jac = space(("O",), 4, A)
    cho = space(("O",), 4, ACHORD)
    assert [jac.dim(m) for m in range(5)] == [1, 1, 2, 3, 6]
    assert [cho.dim(m) for m in range(5)] == [1, 1, 2, 3, 6]


@pytest.mark.parametrize("skel,cap", [(("I",), 4), (("I", "I"), 3), (("O", "O"), 2), (("I", "O"), 2)])
def test_jacobi_and_chord_routes_agree(skel, cap):
    jac = space(skel, cap, A)
    cho = space(skel, cap, ACHORD)
    assert [jac.dim(m) for m in range(cap + 1)] == [cho.dim(m) for m in range(cap + 1)]


def test_interval_circle_and_color_agree():
    dims = lambda skel: [space(skel, 4, A).dim(m) for m in range(5)]
    assert dims(("I",)) == dims(("O",)) == dims(("*",))


@given(formal_sums(("I",), 3, cap=3), formal_sums(("I",), 3, cap=3), small_q, small_q)
def test_reduce_is_linear(v, w, a, b):
    q = space(("I",), 3, A)
    lhs = q.reduce(v * a + w * b)
    rv, rw = q.reduce(v), q.reduce(w)
    rhs = {}
    for k in set(rv) | set(rw):
        c = a * rv.get(k, 0) + b * rw.get(k, 0)
        if c:
            rhs[k] = c
    assert lhs == rhs


@given(formal_sums(("I", "I"), 2, directed=True, cap=2), formal_sums(("I", "I"), 2, directed=True, cap=2))
def test_directed_reduce_is_linear(v, w):
    q = space(("I", "I"), 2, AARROW)
    assert q.element(q.reduce(v + w)) == q.element(q.reduce(v)) + q.element(q.reduce(w))


@pytest.mark.parametrize("skel,m", [(("I",), 2), (("O",), 2), (("I", "I"), 2)])
def test_sinks_and_sources_vanish(skel, m):
    q = space(skel, m, AARROW)
    bad = [d for d in dg.enumerate_diagrams(skel, m, True) if dg.has_sink_or_source(d)]
    assert bad
    for d in bad:
        assert q.is_zero(FormalSum.of(d, 1, m))


def test_verma_basis_is_proper():
    for rs in (MPLUS, MMINUS):
        q = space(("I",), 2, rs)
        for m in range(3):
            assert all(rs.proper(dg.lookup(i)) for i in q.basis(m))


@pytest.mark.parametrize("order", [("in", "out"), ("out", "in")])
def test_product_of_halves_is_bijective(order):
    # μ from diagrams on ↑↑ (legs in on one strand, out on the other) to A⃗(↑)
    cap = 2
    src = space(("I", "I"), cap, restricted(order))
    q = space(("I",), cap, AARROW)
    for m in range(cap + 1):
        images = [q.reduce(M.mu(FormalSum(("I", "I"), {i: Fraction(1)}, cap), 0, 1))
                  for i in src.basis(m)]
        assert len(images) == q.dim(m)
        assert rank(images) == q.dim(m)


def test_formal_sum_arithmetic():
    d = dg.enumerate_diagrams(("I",), 1)[0]
    v = FormalSum.of(d, 2, 2)
    assert (v + v) - v == v
    assert not (v - v)
    assert (v * Fraction(1, 2)).constant() == 0
    assert FormalSum.one(("I",), False, 2).constant() == 1
