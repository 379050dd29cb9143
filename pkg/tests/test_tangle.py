import pytest
from hypothesis import given, strategies as st

from jacobi import maps as M
from jacobi import tangle as T

from conftest import formal_sums


@pytest.fixture(scope="module")
def akz():
    return T.a_kz(2)


@pytest.fixture(scope="module")
def twisted(akz):
    F = T.random_symmetric_twist(2, seed=11, max_degree=2)
    return F, T.twist(akz, F)


@given(st.recursive(st.sampled_from(["u", "d", "*"]), lambda c: st.tuples(c, c), max_leaves=5))
def test_paren_round_trip(p):
    assert T.parse_paren(T.paren_str(p)) == p


def test_paren_errors():
    with pytest.raises(T.TangleError):
        T.parse_paren("((uu)")
    with pytest.raises(T.TangleError):
        T.parse_paren("(uuu)")


def test_relation_suite(akz):
    rows = T.relation_suite(akz)
    assert len(rows) >= 10
    assert all(ok for _, ok in rows), [n for n, ok in rows if not ok]


def test_axioms(akz):
    rep = T.axiom_report(akz)
    assert all(rep.values()), rep


def test_curl_is_ribbon_element(akz):
    curl = T.canonical_order(T.z_eval(T.builtin("curl"), akz))
    assert T.morphisms_equal(curl, T.canonical_order(T.decorated_strands(("u",), akz.v)), akz)


def test_unknot_presentations(akz):
    z1 = T.z_closed(T.builtin("unknot_cn"), akz)
    z2 = T.z_closed(T.builtin("unknot_cp"), akz)
    q = akz.space(("O",))
    assert q.equal(z1, z2)
    assert q.equal(z1, T.unknot_closed_form(akz))


@pytest.mark.parametrize("name", ["unknot_cn", "hopf", "trefoil_left", "trefoil_right"])
def test_link_invariants_are_twist_invariant(akz, twisted, name):
    _, HF = twisted
    w = T.builtin(name)
    z, zf = T.z_closed(w, akz), T.z_closed(w, HF)
    assert akz.space(z.skel).equal(z, zf)


def test_twisted_axioms(twisted):
    _, HF = twisted
    assert all(T.axiom_report(HF).values())


@pytest.mark.parametrize("w", ["((uu)u)", "(u(uu))", "((uu)(uu))", "(ud)"])
@given(x=formal_sums(("I",), 2, cap=2))
def test_generalized_twisted_coproduct(akz, twisted, w, x):
    F, HF = twisted
    W = T.parse_paren(w)
    lhs = HF.delta0(x, 0, W)
    rhs = M.prod(T.f_w0(akz, F, W), akz.delta0(x, 0, W), T.g_w0(akz, F, W))
    assert akz.space(lhs.skel).equal(lhs, rhs)


@pytest.mark.parametrize("g", [T.gen("ra"), T.gen("la"), T.gen("ov"), T.gen("un"), T.gen("cp"),
                               T.gen("cn"), T.gen("ap"), T.gen("an"), T.gen("ov", A="d"),
                               T.gen("la", W="(u*)", B="d")])
def test_conjugation_formula(akz, twisted, g):
    F, HF = twisted
    lhs = T.canonical_order(T.z_generator(g, HF))
    rhs = T.canonical_order(T.twist_conjugate(akz, F, g))
    assert T.morphisms_equal(lhs, rhs, HF)


def test_builtin_words_parse():
    words = T.builtin_words()
    assert {"curl", "hopf", "unknot_cn", "unknot_cp", "jbraid"} <= set(words)
    for w in words.values():
        w.check()


def test_parse_word_errors_carry_line_numbers():
    with pytest.raises(T.TangleError, match="line 2"):
        T.parse_word("cn W=*\nzz W=*\n")
    with pytest.raises(T.TangleError, match="expects"):
        T.parse_word("cn W=*\ncn W=*\n")


def test_word_text_round_trip():
    w = T.builtin("jbraid")
    again = T.parse_word(str(w))
    assert [str(g) for g in again.gens] == [str(g) for g in w.gens]


def test_not_a_link_rejected(akz):
    with pytest.raises(T.TangleError):
        T.z_closed(T.builtin("curl"), akz)
