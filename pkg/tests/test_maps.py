import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi import diagram as dg
from jacobi import maps as M
from jacobi.spaces import A, AARROW, FormalSum, space

from conftest import formal_sums

Q1 = space(("I",), 3, A)
Q2 = space(("I", "I"), 3, A)
D1 = space(("I",), 2, AARROW)
D2 = space(("I", "I"), 2, AARROW)
D3 = space(("I", "I", "I"), 2, AARROW)


@given(formal_sums(("I",), 2, cap=3), formal_sums(("I",), 2, cap=3))
def test_coproduct_is_multiplicative(v, w):
    assert Q2.equal(M.coproduct(M.product(v, w)), M.product(M.coproduct(v), M.coproduct(w)))


@given(formal_sums(("I",), 2, directed=True), formal_sums(("I",), 2, directed=True))
def test_directed_coproduct_is_multiplicative(v, w):
    assert D2.equal(M.coproduct(M.product(v, w)), M.product(M.coproduct(v), M.coproduct(w)))


@given(formal_sums(("I",), 3, cap=3), formal_sums(("I",), 3, cap=3), formal_sums(("I",), 3, cap=3))
def test_product_associative(u, v, w):
    assert Q1.equal(M.product(M.product(u, v), w), M.product(u, M.product(v, w)))


@given(formal_sums(("I",), 2, cap=2))
def test_coproduct_coassociative(v):
    d = M.coproduct(v)
    q = space(("I",) * 3, 2, A)
    assert q.equal(M.cabling(d, 0, 2), M.cabling(d, 1, 2))


@given(formal_sums(("I",), 3, cap=3), formal_sums(("I",), 3, cap=3))
def test_antipode_reverses_products(v, w):
    assert Q1.equal(M.antipode(M.product(v, w)), M.product(M.antipode(w), M.antipode(v)))
    assert Q1.equal(M.antipode(M.antipode(v)), v)


@given(formal_sums(("I",), 2, directed=True))
def test_directed_antipode_involution(v):
    assert D1.equal(M.antipode(M.antipode(v)), v)


@given(formal_sums(("I",), 3, cap=3))
def test_exp_log_inverse(v):
    x = v - FormalSum.one(("I",), False, 3) * v.constant()
    assert Q1.equal(M.log(M.exp(x, 3), 3), x)
    y = M.exp(x, 3)
    assert Q1.equal(M.product(y, M.inverse(y, 3)), FormalSum.one(("I",), False, 3))
    s = M.sqrt(y, 3)
    assert Q1.equal(M.product(s, s), y)


def test_counit_kills_positive_degree():
    c = M.casimir(2)
    assert not M.counit(M.coproduct(c), 0) - c
    assert M.counit(c, 0).constant() == 0 and not M.counit(c, 0)


def test_directed_cybe():
    r = M.rarrow(2)
    r12, r13, r23 = (M.relabel(r, s, 3) for s in ((1, 2), (1, 3), (2, 3)))
    x = M.commutator(r12, r13) + M.commutator(r12, r23) + M.commutator(r13, r23)
    assert D3.is_zero(x)


def test_rho_two_forms():
    lhs = (M.left_half_circle(2) - M.right_half_circle(2)) * Fraction(1, 2)
    rhs = (M.tadpole_down(2) + M.tadpole_up(2)) * Fraction(1, 2)
    assert D1.equal(lhs, rhs)
    assert D1.equal(M.rho(2), rhs)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_iota_commutes_with_chi(m):
    B = space(("*",), 2, A)
    for i in B.basis(m):
        b = FormalSum(("*",), {i: Fraction(1)}, 2)
        assert D1.equal(M.iota(M.chi(b, 0)), M.chi(M.iota(b), 0))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_iota_commutes_with_coproduct(m):
    q = space(("I",), 2, A)
    for i in q.basis(m):
        x = FormalSum(("I",), {i: Fraction(1)}, 2)
        assert D2.equal(M.iota(M.coproduct(x)), M.coproduct(M.iota(x)))


@given(st.integers(0, 2 ** 32))
def test_gamma_cocycle_and_telescoping(seed):
    from jacobi.suites import random_instance
    d, w1, w2 = random_instance(random.Random(seed))
    lhs = M.gamma(w1 + w2, d)
    rhs = M.gamma(w1, M.act_word(w2, d)) + M.gamma(w2, d)
    assert lhs == rhs
    moved = FormalSum.of(M.act_word(w1 + w2, d))
    assert Q1.is_zero(lhs - (FormalSum.of(d) - moved))


def test_gamma_presentation_independent():
    # u1 u1 = id in S_k, so Γ_D(u1 u1) ≡ 0
    d = next(d for d in dg.enumerate_diagrams(("I",), 2) if d.nlegs == 4)
    assert Q1.is_zero(M.gamma((1, 1), d))
    assert Q1.equal(M.gamma((1, 2, 1), d), M.gamma((2, 1, 2), d))


def test_casimir_coproduct():
    one = FormalSum.one(("I",), False, 3)
    C = M.casimir(3)
    rhs = M.tensor(one, C) + M.tensor(C, one) + M.omega(3) * 2
    assert Q2.equal(M.coproduct(C), rhs)


@pytest.mark.parametrize("token", sorted(M.NAMED))
def test_named_elements_build(token):
    assert M.named(token, 2).skel


def test_named_rejects_unknown():
    with pytest.raises(KeyError):
        M.named("nope")
