from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from jacobi import diagram as dg
from jacobi.diagram import Diagram
from jacobi.spaces import FormalSum

settings.register_profile(
    "default", deadline=None, max_examples=30,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

small_q = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def diagrams_on(skel, max_degree, directed=False):
    """All enumerated diagrams on skel of degree 1..max_degree."""
    out = []
    for m in range(1, max_degree + 1):
        out += dg.enumerate_diagrams(skel, m, directed)
    return out


@st.composite
def formal_sums(draw, skel=("I",), max_degree=2, directed=False, cap=None, size=3):
    pool = diagrams_on(skel, max_degree, directed)
    v = FormalSum(skel, {}, max_degree if cap is None else cap)
    if draw(st.booleans()):
        v = v + FormalSum.one(skel, directed, v.cap) * draw(small_q)
    for _ in range(draw(st.integers(1, size))):
        v.add(draw(st.sampled_from(pool)), draw(small_q))
    return v


def relabel(d, legperm, vperm, rots, shifts, flip=None):
    """Same diagram with half-edges renamed; ``flip`` reverses one vertex."""
    L = d.nlegs
    n = d.nint
    new = [0] * len(d.mate)
    for l in range(L):
        new[l] = legperm[l]
    for j in range(n):
        for t in range(3):
            tt = (t + rots[j]) % 3
            if flip == j:
                tt = (3 - tt) % 3
            new[L + 3 * j + t] = L + 3 * vperm[j] + tt
    mate = [0] * len(d.mate)
    for h, m in enumerate(d.mate):
        mate[new[h]] = new[m]
    dirs = None
    if d.dirs is not None:
        dirs = [False] * len(d.mate)
        for h in range(len(d.mate)):
            dirs[new[h]] = d.dirs[h]
    legs = [None] * L
    counts = {c: sum(1 for cc, _ in d.legs if cc == c) for c in range(len(d.skel))}
    for l, (c, p) in enumerate(d.legs):
        if dg.is_circle(d.skel[c]):
            p = (p + shifts.get(c, 0)) % counts[c]
        legs[new[l]] = (c, p)
    return Diagram(d.skel, tuple(legs), tuple(mate), None if dirs is None else tuple(dirs))


def random_relabel(d, rng, flip=False):
    L, n = d.nlegs, d.nint
    legperm = list(range(L))
    rng.shuffle(legperm)
    vperm = list(range(n))
    rng.shuffle(vperm)
    rots = [rng.randrange(3) for _ in range(n)]
    shifts = {c: rng.randrange(10) for c in range(len(d.skel))}
    f = rng.randrange(n) if flip and n else None
    return relabel(d, legperm, vperm, rots, shifts, f)


@pytest.fixture(scope="session")
def sl2():
    from jacobi import lie
    return lie.sl2()


@pytest.fixture(scope="session")
def dsl2():
    from jacobi import lie
    return lie.doubled_sl2()
