import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi import diagram as dg
from jacobi.diagram import Diagram

from conftest import random_relabel, relabel


def brute_key(d):
    """Minimum encoding over vertex relabelings, rotations and circle shifts (sign ignored)."""
    L, n = d.nlegs, d.nint
    circ = [c for c, t in enumerate(d.skel) if dg.is_circle(t)]
    counts = {c: sum(1 for cc, _ in d.legs if cc == c) for c in circ}
    best = None
    for shift in itertools.product(*[range(max(counts[c], 1)) for c in circ]):
        sh = dict(zip(circ, shift))
        legs = [(c, (p + sh.get(c, 0)) % counts[c] if c in sh else p) for c, p in d.legs]
        order = sorted(range(L), key=lambda l: (legs[l], l))
        if dg.is_color(d.skel[0]) or any(dg.is_color(t) for t in d.skel):
            pytest.skip("oracle covers intervals and circles only")
        legperm = [0] * L
        for k, l in enumerate(order):
            legperm[l] = k
        for vperm in itertools.permutations(range(n)):
            for rots in itertools.product(range(3), repeat=n):
                for flip in [None] + list(range(n)):
                    e = relabel(d, legperm, vperm, rots, sh, flip)
                    k = (e.legs, e.mate, e.dirs)
                    if best is None or k < best:
                        best = k
    return best


SMALL = [(("I",), 1), (("I",), 2), (("I",), 3), (("O",), 1), (("O",), 2), (("O",), 3),
         (("I", "I"), 1), (("I", "I"), 2), (("I", "O"), 2)]


@pytest.mark.parametrize("skel,m", SMALL)
def test_enumeration_has_no_isomorphic_pairs(skel, m):
    ds = dg.enumerate_diagrams(skel, m)
    keys = [brute_key(d) for d in ds]
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("skel,m", [(("I",), 2), (("O",), 2), (("I", "I"), 1)])
def test_directed_enumeration_has_no_isomorphic_pairs(skel, m):
    ds = dg.enumerate_diagrams(skel, m, directed=True)
    keys = [brute_key(d) for d in ds]
    assert len(set(keys)) == len(keys)


def _pool(directed=False):
    out = []
    for skel, m in SMALL:
        out += dg.enumerate_diagrams(skel, m, directed)
    return out


POOL = _pool()
DPOOL = [d for skel, m in SMALL[:6] for d in dg.enumerate_diagrams(skel, m, True)]


@given(st.sampled_from(POOL + DPOOL))
def test_canonicalize_idempotent(d):
    cf = dg.canonicalize(d)
    again = dg.canonicalize(cf.diagram)
    assert again.diagram == cf.diagram and again.sign == 1


@given(st.sampled_from(POOL + DPOOL), st.integers(0, 2 ** 32))
def test_canonicalize_invariant_under_relabeling(d, seed):
    rng = random.Random(seed)
    cf = dg.canonicalize(d)
    e = random_relabel(d, rng)
    ce = dg.canonicalize(e)
    assert ce.diagram == cf.diagram and ce.sign == cf.sign


@given(st.sampled_from([d for d in POOL + DPOOL if d.nint]), st.integers(0, 2 ** 32))
def test_reversing_one_vertex_flips_sign(d, seed):
    rng = random.Random(seed)
    cf = dg.canonicalize(d)
    e = random_relabel(d, rng, flip=True)
    ce = dg.canonicalize(e)
    assert ce.diagram == cf.diagram and ce.sign == -cf.sign


@given(st.sampled_from(DPOOL), st.integers(0, 2 ** 32))
def test_directed_canonicalization_forgets_to_undirected(d, seed):
    e = random_relabel(d, random.Random(seed))
    cd = dg.canonicalize(e)
    und = lambda x: Diagram(x.skel, x.legs, x.mate, None)
    s1 = dg.canonicalize(und(e))
    s2 = dg.canonicalize(und(cd.diagram))
    assert s1.diagram == s2.diagram
    assert s1.sign == cd.sign * s2.sign


# chord diagrams on an interval are all distinct: (2m-1)!!; on a circle,
# up to rotation: 1, 2, 5, 18
@pytest.mark.parametrize("skel,counts", [(("I",), [1, 3, 15, 105]), (("O",), [1, 2, 5, 18])])
def test_chord_diagram_counts(skel, counts):
    got = [len(dg.enumerate_chord_diagrams(skel, m)) for m in range(1, 5)]
    assert got == counts


@given(st.sampled_from(POOL + DPOOL), st.builds(Fraction, st.integers(-9, 9).filter(bool), st.integers(1, 9)))
def test_text_round_trip(d, c):
    sign = 1 if c > 0 else -1
    text = dg.to_text(d, sign)
    if abs(c) != 1:
        text = text.replace(f"sign {'+1' if sign > 0 else '-1'}\n",
                            f"sign {'+1' if sign > 0 else '-1'}\ncoeff {abs(c)}\n")
    [(e, k)] = dg.parse_text(text)
    assert dg.canonicalize(e).diagram == dg.canonicalize(d).diagram
    assert k * dg.canonicalize(e).sign == c * dg.canonicalize(d).sign


def test_parse_error_reports_line():
    with pytest.raises(dg.ParseError, match="line 2"):
        dg.parse_text("skeleton I\nbogus e0\n")


def test_validate_rejects_bad_mates():
    with pytest.raises(dg.StructureError):
        dg.validate(Diagram(("I",), ((0, 0), (0, 1)), (0, 1)))


def test_guard_trips():
    old = dg.CONFIG.guard
    dg.CONFIG.guard = 3
    try:
        with pytest.raises(dg.GuardExceeded):
            dg.enumerate_diagrams(("O", "O", "I"), 3)
    finally:
        dg.CONFIG.guard = old
