import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi import lie
from jacobi import maps as M
from jacobi.spaces import A, AARROW, FormalSum, generate_relations

from conftest import diagrams_on, formal_sums, random_relabel, relabel

E, H, F = lie.E, lie.H, lie.F


def test_sl2_structure(sl2):
    assert sl2.dim == 3
    assert sl2.br(E, F) == {H: 1}
    assert sl2.metric[H][H] == 2 and sl2.metric[E][F] == 1


def test_bad_bracket_rejected():
    # [a, b] = a, [a, c] = b, [b, c] = c fails Jacobi
    br = {(0, 1): {0: 1}, (1, 0): {0: -1}, (0, 2): {1: 1}, (2, 0): {1: -1},
          (1, 2): {2: 1}, (2, 1): {2: -1}}
    with pytest.raises(lie.LieAlgebraError):
        lie.MetrizedLieAlgebra(("a", "b", "c"), br, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_non_invariant_metric_rejected():
    g = lie.sl2()
    with pytest.raises(lie.LieAlgebraError):
        lie.MetrizedLieAlgebra(g.names, g.bracket, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_bad_cobracket_rejected():
    # δ(e) = e∧f on sl2: δ([e, f]) = 0 but e·δ(f) − f·δ(e) = h∧f
    g = lie.sl2()
    with pytest.raises(lie.LieAlgebraError, match="cocycle"):
        lie.LieBialgebra(g.names, g.bracket, {E: {(E, F): Fraction(1), (F, E): Fraction(-1)}})


def test_parse_sl2_file(sl2):
    g = lie.builtin("sl2")
    f = lie.load_lie(__import__("jacobi").__path__[0] + "/data/sl2.lie")
    assert f.bracket == sl2.bracket == g.bracket
    assert f.metric == sl2.metric
    assert f.reps["fund"] == sl2.reps["fund"]


def test_parse_bialgebra_file_gives_double():
    mt = lie.builtin("borel_sl2")
    assert isinstance(mt, lie.ManinTriple)
    assert mt.g.dim == 4 and len(mt.plus) == len(mt.minus) == 2


def test_parse_errors():
    with pytest.raises(lie.LieAlgebraError, match="dim"):
        lie.parse_lie("names a b\n")
    with pytest.raises(lie.LieAlgebraError, match="unknown directive"):
        lie.parse_lie("dim 1\nfrob 0\n")


def test_two_dimensional_double():
    mt = lie.build_double(lie.two_dim_bialgebra())
    g = mt.g
    assert g.dim == 4
    # halves are isotropic subalgebras
    for half in (mt.plus, mt.minus):
        for a in half:
            for b in half:
                assert g.metric[a][b] == 0
                assert set(g.br(a, b)) <= set(half)


def test_doubled_sl2_brackets(dsl2):
    g = dsl2.g
    e, h, es, hs = 0, 1, 2, 3
    assert g.br(e, es) == {h: Fraction(1, 2), hs: 2}
    assert g.br(es, hs) == {es: Fraction(1, 2)}
    assert g.br(e, hs) == {e: Fraction(-1, 2)}


def test_omega_and_casimir(sl2):
    om = lie.tg_eval(M.omega(), sl2)
    assert om.terms == {(1, ((E,), (F,))): 1, (1, ((F,), (E,))): 1, (1, ((H,), (H,))): Fraction(1, 2)}
    # C acts as 3/2 on the fundamental representation, so its trace is 3
    assert lie.trace_on_rep(lie.tg_eval(M.casimir(), sl2), ["fund"]) == [0, 3]
    assert lie.rep_action(lie.tg_eval(M.casimir(), sl2), "fund") == [[Fraction(3, 2), 0], [0, Fraction(3, 2)]]


def test_projected_classical_r_matrix(dsl2):
    p = dsl2.project(lie.tar_eval(M.rarrow(), dsl2))
    assert p.terms == {(1, ((E,), (F,))): 1, (1, ((H,), (H,))): Fraction(1, 4)}
    rho = dsl2.project(lie.tar_eval(M.rho(), dsl2))
    assert rho.terms == {(1, ((H,),)): Fraction(1, 2)}


@pytest.mark.parametrize("skel", [("I",), ("I", "I"), ("O",), ("I", "*")])
@pytest.mark.parametrize("m", [1, 2])
def test_relations_vanish_undirected(sl2, skel, m):
    for rel in generate_relations(skel, m, A):
        assert not lie.tg_eval(rel, sl2)


@pytest.mark.parametrize("skel", [("I",), ("I", "I")])
@pytest.mark.parametrize("m", [1, 2])
def test_relations_vanish_directed(dsl2, skel, m):
    for rel in generate_relations(skel, m, AARROW):
        assert not lie.tar_eval(rel, dsl2)


def test_relations_vanish_sampled_degree_three(sl2):
    rng = random.Random(7)
    rels = generate_relations(("I",), 3, A)
    for rel in rng.sample(rels, min(40, len(rels))):
        assert not lie.tg_eval(rel, sl2)


POOL = diagrams_on(("I",), 2) + diagrams_on(("I", "I"), 2)


@given(st.sampled_from(POOL), st.integers(0, 2 ** 32))
def test_separation_independence(d, seed):
    g = lie.sl2()
    e = random_relabel(d, random.Random(seed))
    assert lie.tg_eval(e, g) == lie.tg_eval(d, g)


@given(st.sampled_from([d for d in POOL if d.nint]))
def test_reversing_a_vertex_negates(d):
    g = lie.sl2()
    L = d.nlegs
    flipped = relabel(d, list(range(L)), list(range(d.nint)), [0] * d.nint, {}, 0)
    assert lie.tg_eval(flipped, g) == -lie.tg_eval(d, g)


@given(st.sampled_from(POOL))
def test_iota_square_commutes(d):
    mt = lie.doubled_sl2()
    assert lie.tar_eval(M.iota(FormalSum.of(d)), mt) == lie.tg_eval(FormalSum.of(d), mt.g)


@given(formal_sums(("I",), 2), formal_sums(("I",), 2))
def test_evaluation_intertwines_products(v, w):
    g = lie.sl2()
    assert lie.tg_eval(M.product(v, w), g) == lie.tg_eval(v, g).product(lie.tg_eval(w, g), 2)


@given(formal_sums(("I",), 2))
def test_evaluation_intertwines_coproducts(v):
    g = lie.sl2()
    assert lie.tg_eval(M.coproduct(v), g) == lie.tg_eval(v, g).coproduct(0)


def test_exp_series_trace(dsl2):
    t = dsl2.project(lie.tar_eval(M.rho(4), dsl2))
    assert lie.trace_on_rep(t.exp(4), ["fund"]) == [2, 0, Fraction(1, 4), 0, Fraction(1, 192)]
