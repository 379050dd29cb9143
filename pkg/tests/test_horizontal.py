from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi import horizontal as hz
from jacobi import maps as M
from jacobi import tangle as T
from jacobi.spaces import A, ACHORD, FormalSum, space


@pytest.fixture(scope="module")
def assoc():
    return T.solve_associator_cached(4)


# U(t_n) has Hilbert series Π_{k<n} 1/(1 - k t)
@pytest.mark.parametrize("n,dims", [(2, [1, 1, 1, 1]), (3, [1, 3, 7, 15, 31]), (4, [1, 6, 25, 90])])
def test_horizontal_dimensions(n, dims):
    assert [hz.hor_dim(n, d) for d in range(len(dims))] == dims


def test_associator_residuals(assoc):
    checks = hz.verify_associator(assoc)
    assert all(checks.values()), checks


def test_degree_two_part(assoc):
    # |ζ(2)/(2πi)²| = 1/24 fixes the coefficient of [t12, t23] up to the sign convention
    t12, t23 = (hz.HorElement(3, {(hz.gen(*p),): Fraction(1)}, 4) for p in ((1, 2), (2, 3)))
    br = hz.commutator(t12, t23)
    p2 = assoc.part(2)
    assert any(hz.hor_equal(p2, br * c) for c in (Fraction(1, 24), Fraction(-1, 24)))


def test_associator_is_even(assoc):
    assert not assoc.part(1) and not assoc.part(3)


def test_table_round_trip(assoc):
    text = hz.format_table(assoc.phi)
    back = hz.parse_table(text, 3, assoc.cap)
    assert hz.hor_equal(back, assoc.phi)


def test_table_parse_error_has_line_number():
    with pytest.raises(ValueError, match="line 2"):
        hz.parse_table("0\t1\t1\nbad line\n")


def test_embedding_respects_products(assoc):
    x = assoc.phi.with_cap(3)
    y = hz.inverse(x, 3)
    ex, ey = hz.embed_hor(x).with_cap(3), hz.embed_hor(y).with_cap(3)
    q = space(("I",) * 3, 3, ACHORD)
    assert q.equal(M.product(ex, ey), FormalSum.one(("I",) * 3, False, 3))


def test_nu_is_invertible_perturbation():
    H = T.a_kz(3)
    nu = H.alpha
    assert nu.constant() == 1
    q = space(("I",), 3, A)
    assert q.equal(M.product(nu, M.inverse(nu, 3)), FormalSum.one(("I",), False, 3))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_omega_central(m):
    q = space(("I", "I"), 4, A)
    for i in q.basis(m):
        x = FormalSum(("I", "I"), {i: Fraction(1)}, 4)
        assert q.is_zero(M.commutator(M.omega(4), x))


@given(st.lists(st.sampled_from(hz.generators(3)), max_size=4), st.sampled_from(hz.generators(3)))
def test_infinitesimal_braid_relations(word, g):
    # t12 + t13 + t23 is central in t_3
    c = hz.HorElement(3, {(x,): Fraction(1) for x in hz.generators(3)}, 5)
    w = hz.HorElement(3, {tuple(word): Fraction(1)}, 5)
    assert hz.is_zero(hz.commutator(c, w))


def test_solver_guard():
    with pytest.raises(ValueError):
        hz.solve_associator(9)


def test_associator_is_group_like(assoc):
    psi = hz.log(assoc.phi, 4)
    for d in range(2, 5):
        part = psi.degree_part(d)
        span = [hz.reduce_hor(x) for x in hz.lie_basis(3, d)]
        from jacobi.rat import rank
        assert rank(span + [hz.reduce_hor(part)]) == len(span)


def test_gauge_leaves_no_freedom(assoc):
    assert assoc.free_zeroed == {2: 0, 3: 0, 4: 0}


def test_associator_regression(assoc):
    # frozen output of the solver; pentagon, hexagons and uniqueness above vouch for it
    from pathlib import Path
    frozen = hz.parse_table((Path(__file__).parent / "data" / "phi_cap4.tsv").read_text(), 3, 4)
    assert hz.hor_equal(frozen, assoc.phi)
    assert hz.format_table(assoc.phi) == hz.format_table(frozen)


@pytest.mark.parametrize("d,dim", [(2, 1), (3, 2), (4, 3)])
def test_lie_basis_dimensions(d, dim):
    # t_3 = free Lie(t12, t23) ⊕ centre; Witt's formula gives 1, 2, 3
    assert len(hz.lie_basis(3, d)) == dim
