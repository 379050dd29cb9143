"""Structure maps between diagram spaces and a few named elements.

Products, coproducts, antipodes and closures act on diagram representatives
and never look at relations, so they are exact on formal sums and descend to
every quotient.  Results are truncated at the cap of their inputs.

Merge plans.  Many maps are instances of one operation: every output
component is a chain of input components, read tail to head, each possibly
reversed.  An input component that appears in no chain is removed by the
counit, which kills every diagram with a leg on it.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction

from . import diagram as dg
from .diagram import Diagram, Graph
from .spaces import FormalSum, A, AARROW, space


class PlanError(ValueError):
    pass


# ---------------------------------------------------------------- juxtaposition

def juxtapose(ds) -> Diagram:
    """Disjoint union of diagrams; skeletons are concatenated in order."""
    ds = list(ds)
    skel = tuple(t for d in ds for t in d.skel)
    directed = any(d.dirs is not None for d in ds)
    L = sum(d.nlegs for d in ds)
    legs = []
    coff = 0
    for d in ds:
        legs.extend((c + coff, p) for c, p in d.legs)
        coff += len(d.skel)
    # half-edge maps: legs of all diagrams first, then all internal blocks
    maps = []
    loff = 0
    ioff = L
    for d in ds:
        nl = d.nlegs
        ni3 = len(d.mate) - nl
        maps.append((loff, ioff, nl))
        loff += nl
        ioff += ni3
    H = ioff
    mate = [0] * H
    dirs = [False] * H if directed else None
    for d, (lo, io, nl) in zip(ds, maps):
        def f(h, lo=lo, io=io, nl=nl):
            return lo + h if h < nl else io + h - nl
        for h, m in enumerate(d.mate):
            mate[f(h)] = f(m)
            if directed:
                dirs[f(h)] = d.dirs[h] if d.dirs is not None else False
    return Diagram(skel, tuple(legs), tuple(mate), None if dirs is None else tuple(dirs))


def _tensor2(x: FormalSum, y: FormalSum, cap) -> FormalSum:
    out = FormalSum(x.skel + y.skel, {}, cap)
    ys = [(dg.lookup(j), b) for j, b in y.terms.items()]
    for i, a in x.terms.items():
        d = dg.lookup(i)
        for e, b in ys:
            if cap is not None and d.degree + e.degree > cap:
                continue
            out.add(juxtapose((d, e)), a * b)
    return out


def _mincap(xs):
    caps = [x.cap for x in xs if x.cap is not None]
    return min(caps) if caps else None


def tensor(*xs, cap=None) -> FormalSum:
    """x1 ⊠ x2 ⊠ ... on the concatenated skeleton."""
    if cap is None:
        cap = _mincap(xs)
    acc = xs[0].with_cap(cap)
    for y in xs[1:]:
        acc = _tensor2(acc, y, cap)
    return acc


# ---------------------------------------------------------------- merge plans

def _where(plan, nin):
    where = {}
    for k, (tok, chain) in enumerate(plan):
        for j, (c, rev) in enumerate(chain):
            if not 0 <= c < nin or c in where:
                raise PlanError(f"component {c} used twice or out of range")
            where[c] = (k, j, rev)
    return where


def _apply_plan(d: Diagram, where, out_skel):
    sign = 1
    legs = []
    for c, p in d.legs:
        w = where.get(c)
        if w is None:
            return None, 0
        k, j, rev = w
        if rev:
            sign = -sign
            legs.append((k, (j, -p)))
        else:
            legs.append((k, (j, p)))
    legs = dg.normalize_positions(out_skel, legs)
    return Diagram(out_skel, legs, d.mate, d.dirs), sign


def merge(x: FormalSum, plan) -> FormalSum:
    """Apply a merge plan [(token, [(comp, reversed), ...]), ...] to x."""
    out_skel = tuple(tok for tok, _ in plan)
    where = _where(plan, len(x.skel))
    out = FormalSum(out_skel, {}, x.cap)
    for i, c in x.terms.items():
        e, s = _apply_plan(dg.lookup(i), where, out_skel)
        if s:
            out.add(e, s * c)
    return out


def contract(xs, plan, cap=None) -> FormalSum:
    """Merge plan applied to the tensor product of several elements."""
    return merge(tensor(*xs, cap=cap), plan)


def _check_same(x, y):
    if x.skel != y.skel:
        raise ValueError(f"skeleton mismatch {x.skel} vs {y.skel}")


def product(x: FormalSum, y: FormalSum) -> FormalSum:
    """Componentwise product x·y; on each component x's legs come first."""
    _check_same(x, y)
    n = len(x.skel)
    for t in x.skel:
        if dg.is_circle(t):
            raise ValueError("no product on circle components")
    plan = [(t, [(k, False), (n + k, False)]) for k, t in enumerate(x.skel)]
    return contract([x, y], plan)


def mu(v: FormalSum, m1: int, m2: int) -> FormalSum:
    """Glue component m2 after component m1 (same type); m2 is removed."""
    t1, t2 = v.skel[m1], v.skel[m2]
    if t1 != t2 or dg.is_circle(t1):
        raise ValueError(f"cannot glue {t1} and {t2}")
    plan = []
    for k, t in enumerate(v.skel):
        if k == m1:
            plan.append((t, [(m1, False), (m2, False)]))
        elif k != m2:
            plan.append((t, [(k, False)]))
    return merge(v, plan)


def iterated_product(v: FormalSum) -> FormalSum:
    """μ^{(n)}: concatenate all interval components in order."""
    return merge(v, [("I", [(k, False) for k in range(len(v.skel))])])


def antipode(v: FormalSum, m=None) -> FormalSum:
    """Reverse component m (all components if None), sign (-1)^{legs on it}."""
    ms = range(len(v.skel)) if m is None else [m]
    plan = [(t, [(k, k in ms)]) for k, t in enumerate(v.skel)]
    return merge(v, plan)


def counit(v: FormalSum, m: int) -> FormalSum:
    plan = [(t, [(k, False)]) for k, t in enumerate(v.skel) if k != m]
    return merge(v, plan)


def trace(v: FormalSum, m: int = 0) -> FormalSum:
    """Close interval component m into a circle."""
    if not dg.is_interval(v.skel[m]):
        raise ValueError("trace needs an interval component")
    plan = [("O" if k == m else t, [(k, False)]) for k, t in enumerate(v.skel)]
    return merge(v, plan)


def relabel(v: FormalSum, slots, n: int) -> FormalSum:
    """X^{k1...kp}: component i of v goes to strand slots[i] (1-based) of n."""
    slots = tuple(slots)
    if len(slots) != len(v.skel) or len(set(slots)) != len(slots) \
            or any(not 1 <= s <= n for s in slots):
        raise PlanError(f"invalid slot map {slots} for {len(v.skel)} -> {n}")
    inv = {s - 1: i for i, s in enumerate(slots)}
    plan = []
    for j in range(n):
        if j in inv:
            plan.append((v.skel[inv[j]], [(inv[j], False)]))
        else:
            plan.append(("I", []))
    return merge(v, plan)


def permute(v: FormalSum, perm) -> FormalSum:
    """X^{perm}: shorthand for relabel with the same number of strands."""
    return relabel(v, perm, len(v.skel))


def pad(v: FormalSum, left: int, right: int) -> FormalSum:
    """1^{⊠left} ⊠ v ⊠ 1^{⊠right}."""
    n = left + len(v.skel) + right
    return relabel(v, tuple(range(left + 1, left + 1 + len(v.skel))), n)


# ---------------------------------------------------------------- cabling

def cabling(v: FormalSum, m: int, k: int = 2) -> FormalSum:
    """Split component m into k parallel copies (k = 0 is the counit).

    Each leg on m goes to one copy, summed over all k^legs choices; copies
    are inserted at position m and keep the original leg order.
    """
    if k == 0:
        return counit(v, m)
    skel = v.skel[:m] + (v.skel[m],) * k + v.skel[m + 1:]
    out = FormalSum(skel, {}, v.cap)

    def shift(c):
        return c if c < m else c + k - 1

    for i, c in v.terms.items():
        d = dg.lookup(i)
        on = [j for j, (cc, _) in enumerate(d.legs) if cc == m]
        base = [(shift(cc), p) for cc, p in d.legs]
        for choice in itertools.product(range(k), repeat=len(on)):
            legs = list(base)
            for j, t in zip(on, choice):
                legs[j] = (m + t, d.legs[j][1])
            legs = dg.normalize_positions(skel, legs)
            out.add(Diagram(skel, legs, d.mate, d.dirs), c)
    return out


def coproduct(v: FormalSum, m: int = 0) -> FormalSum:
    return cabling(v, m, 2)


def iterated_coproduct(v: FormalSum, n: int) -> FormalSum:
    """Δ^{(n)} on a single-strand element; Δ^{(1)} = id, Δ^{(0)} = ε."""
    if len(v.skel) != 1:
        raise ValueError("iterated coproduct of a single-strand element")
    return cabling(v, 0, n)


def delta_i(v: FormalSum, i: int) -> FormalSum:
    """Δ_i with 1-based slot i."""
    return cabling(v, i - 1, 2)


def eps_i(v: FormalSum, i: int) -> FormalSum:
    return counit(v, i - 1)


# ---------------------------------------------------------------- iota and chi

def iota(v: FormalSum) -> FormalSum:
    """Sum over all direction assignments of every arc."""
    out = FormalSum(v.skel, {}, v.cap)
    for i, c in v.terms.items():
        d = dg.lookup(i)
        if d.dirs is not None:
            raise ValueError("iota expects undirected diagrams")
        if d.degree == 0:
            out.add(dg.empty(d.skel, True), c)
            continue
        for e in dg.orientations(d):
            out.add(e, c)
    return out


def forget(v: FormalSum) -> FormalSum:
    """Drop all directions (a left inverse of ι up to 2^{arcs})."""
    return v.map_diagrams(lambda d: [(Diagram(d.skel, d.legs, d.mate, None), 1)])


def chi(v: FormalSum, comp: int = None) -> FormalSum:
    """Average over all orderings of the legs on a color, which becomes an interval."""
    if comp is None:
        comp = next(k for k, t in enumerate(v.skel) if dg.is_color(t))
    if not dg.is_color(v.skel[comp]):
        raise ValueError("chi needs a color component")
    skel = v.skel[:comp] + ("I",) + v.skel[comp + 1:]
    out = FormalSum(skel, {}, v.cap)
    for i, c in v.terms.items():
        d = dg.lookup(i)
        on = [j for j, (cc, _) in enumerate(d.legs) if cc == comp]
        w = Fraction(c, math.factorial(len(on)))
        for perm in itertools.permutations(range(len(on))):
            legs = list(d.legs)
            for j, r in zip(on, perm):
                legs[j] = (comp, r)
            legs = dg.normalize_positions(skel, legs)
            out.add(Diagram(skel, legs, d.mate, d.dirs), w)
    return out


def star(d: Diagram, comp: int = 0, name: str = "*") -> Diagram:
    """D*: the interval comp becomes a color."""
    skel = d.skel[:comp] + (name,) + d.skel[comp + 1:]
    return Diagram(skel, dg.normalize_positions(skel, d.legs), d.mate, d.dirs)


# ---------------------------------------------------------------- gluing operators

def permutation_action(perm, d: Diagram, comp: int = 0) -> Diagram:
    """πD: the leg at position j of comp moves to position perm[j] (0-based)."""
    ls = d.legs_on(comp)
    if len(ls) != len(perm):
        return None
    legs = list(d.legs)
    for j, leg in enumerate(ls):
        legs[leg] = (comp, perm[j])
    return Diagram(d.skel, tuple(legs), d.mate, d.dirs)


def transposition(i: int, k: int) -> tuple:
    """u_i in S_k (1-based i, swaps i and i+1) as an image tuple."""
    p = list(range(k))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def compose(p, q) -> tuple:
    """(p q)(j) = p(q(j))."""
    return tuple(p[q[j]] for j in range(len(q)))


def join_legs(d: Diagram, i: int, comp: int = 0):
    """s_i D: legs at positions i, i+1 (1-based) fused into a Y with a new leg.

    The new vertex has cyclic order (new leg, lower, upper), so that
    s_i D = D - u_i D by STU.  Directed diagrams give both directions of
    the new leg.  Returns a list of (Diagram, coeff).
    """
    ls = d.legs_on(comp)
    a, b = ls[i - 1], ls[i]
    g = Graph.of(d)
    pa, pb = d.legs[a][1], d.legs[b][1]
    ma, mb = g.mate[a], g.mate[b]
    da = None if g.dirs is None else g.dirs[a]
    db = None if g.dirs is None else g.dirs[b]
    del g.legs[a]
    del g.legs[b]
    for lab in (a, b):
        g.mate.pop(lab)
        if g.dirs is not None:
            g.dirs.pop(lab)
    x, y, n, nl = ("s", "x"), ("s", "y"), ("s", "n"), ("s", "leg")
    g.verts.append((n, x, y))
    g.legs[nl] = (comp, (pa + pb) / 2)
    # x, y take over the roles of legs a, b; their directions are inherited
    if ma == b:
        g.connect(x, y, da)
    else:
        g.connect(x, ma, da)
        g.connect(y, mb, db)
    if g.dirs is None:
        g.connect(nl, n, None)
        return [(g.diagram(), 1)]
    out = []
    for t in (True, False):
        h = g.copy()
        h.connect(nl, n, t)
        out.append((h.diagram(), 1))
    return out


def glue(C: FormalSum, D: FormalSum) -> FormalSum:
    """Glue the legs of D (on ↑) to the legs of C on its upper strand.

    C lives on (↑ lower, ↑ upper).  Pairs with different leg counts give 0,
    and a directed pair contributes only when every incoming leg of D meets
    an outgoing leg of C and vice versa.
    """
    out = FormalSum(("I",), {}, None)
    for i, a in C.terms.items():
        c = dg.lookup(i)
        for j, b in D.terms.items():
            d = dg.lookup(j)
            e = _glue1(c, d)
            if e is not None:
                out.add(e, a * b)
    return out


def _glue1(c: Diagram, d: Diagram):
    up = c.legs_on(1)
    dl = d.legs_on(0)
    if len(up) != len(dl):
        return None
    directed = c.dirs is not None
    if directed:
        for hu, hd in zip(up, dl):
            if c.dirs[hu] == d.dirs[hd]:
                return None
    nbr = {}
    direc = {}
    for h, m in enumerate(c.mate):
        nbr[("c", h)] = ("c", m)
        if directed:
            direc[("c", h)] = c.dirs[h]
    for h, m in enumerate(d.mate):
        nbr[("d", h)] = ("d", m)
        if directed:
            direc[("d", h)] = d.dirs[h]
    joined = {}
    for hu, hd in zip(up, dl):
        joined[("c", hu)] = ("d", hd)
        joined[("d", hd)] = ("c", hu)
    g = Graph(("I",), {}, [], {}, {} if directed else None)
    for h in c.legs_on(0):
        g.legs[("c", h)] = (0, c.legs[h][1])
    for j in range(c.nint):
        g.verts.append(tuple(("c", h) for h in c.ports(c.nlegs + j)))
    for j in range(d.nint):
        g.verts.append(tuple(("d", h) for h in d.ports(d.nlegs + j)))
    kept = set(g.legs) | {h for vs in g.verts for h in vs}
    done = set()
    for h in kept:
        if h in done:
            continue
        cur = nbr[h]
        while cur in joined:
            cur = nbr[joined[cur]]
        if cur == h or cur not in kept:
            raise dg.StructureError("gluing produced a free loop")
        g.connect(h, cur, direc.get(h))
        done.update((h, cur))
    return g.diagram()


def permutation_diagram(perm, directed: bool = False) -> FormalSum:
    """The diagram of π on (↑ lower, ↑ upper): upper j joined to lower perm[j]."""
    k = len(perm)
    legs = [(0, perm[j]) for j in range(k)] + [(1, j) for j in range(k)]
    mate = [0] * (2 * k)
    for j in range(k):
        mate[j], mate[k + j] = k + j, j
    d = Diagram(("I", "I"), tuple(legs), tuple(mate), None)
    v = FormalSum.of(d)
    return iota(v) if directed else v


def gamma(word, d: Diagram, comp: int = 0) -> FormalSum:
    """Γ_D(u_{i1}...u_{iq}) = Σ_p s_{ip} u_{i(p+1)} ... u_{iq} D."""
    out = FormalSum(d.skel, {}, None)
    k = len(d.legs_on(comp))
    cur = d
    for i in reversed(list(word)):
        for e, c in join_legs(cur, i, comp):
            out.add(e, c)
        cur = permutation_action(transposition(i, k), cur, comp)
    return out


def act_word(word, d: Diagram, comp: int = 0) -> Diagram:
    """u_{i1} ... u_{iq} D."""
    k = len(d.legs_on(comp))
    for i in reversed(list(word)):
        d = permutation_action(transposition(i, k), d, comp)
    return d


# ---------------------------------------------------------------- sigma

class _Sigma:
    """Memoized inverse of χ on one interval, by the Γ_D recursion.

    σ is linear and kills relations, so it is evaluated on quotient basis
    elements only.  The basis is adapted to the leg filtration, hence
    reducing an element with at most j legs keeps at most j legs.
    """

    def __init__(self, directed: bool):
        self.directed = directed
        self.rs = AARROW if directed else A
        self.memo: dict = {}
        self.join_memo: dict = {}

    def quotient(self, cap):
        return space(("I",), cap, self.rs)

    def __call__(self, v: FormalSum) -> FormalSum:
        cap = max(v.max_degree(), 0)
        q = self.quotient(cap)
        out = FormalSum(("*",), {}, v.cap)
        for b, c in q.reduce(v).items():
            for j, a in self.basis(b).terms.items():
                out.add_id(j, a * c)
        return out

    def basis(self, b: int) -> FormalSum:
        hit = self.memo.get(b)
        if hit is not None:
            return hit
        d = dg.lookup(b)
        k = d.nlegs
        res = FormalSum(("*",), {}, None)
        res.add(star(d), 1)
        if k >= 2:
            lower = self.lambda_sum(d)
            if lower:
                s = self(lower)
                for j, a in s.terms.items():
                    res.add_id(j, a / math.factorial(k))
        self.memo[b] = res
        return res

    def lambda_sum(self, d: Diagram) -> FormalSum:
        """Σ_π Γ_D(π) with one presentation per π (a BFS tree of S_k)."""
        k = d.nlegs
        ident = tuple(range(k))
        parent = {ident: None}
        order = [ident]
        dq = deque([ident])
        while dq:
            p = dq.popleft()
            for i in range(1, k):
                q = compose(transposition(i, k), p)
                if q not in parent:
                    parent[q] = (p, i)
                    order.append(q)
                    dq.append(q)
        size = dict.fromkeys(order, 1)
        for q in reversed(order[1:]):
            size[parent[q][0]] += size[q]
        acc = FormalSum(d.skel, {}, None)
        for q in order[1:]:
            p, i = parent[q]
            e = permutation_action(p, d)
            for j, c in self.joined(e, i):
                acc.add_id(j, c * size[q])
        return acc

    def joined(self, e: Diagram, i: int):
        ce, s = dg.canonical_key(e)
        key = (ce, i) if s else None
        # the join depends on the labeled diagram; canonical form fixes leg order
        if s:
            hit = self.join_memo.get(key)
            if hit is not None:
                return [(j, c * s) for j, c in hit]
            e = ce
        res = FormalSum(e.skel, {}, None)
        for x, c in join_legs(e, i):
            res.add(x, c)
        items = list(res.terms.items())
        if s:
            self.join_memo[key] = items
            return [(j, c * s) for j, c in items]
        return items


_SIGMA = {False: _Sigma(False), True: _Sigma(True)}


def sigma(v: FormalSum) -> FormalSum:
    """Inverse of χ: a formal sum on ↑ to a formal sum on ∗ (B-representative)."""
    if v.skel != ("I",):
        raise ValueError("sigma is defined on the single-interval skeleton")
    return _SIGMA[v.is_directed()](v)


# ---------------------------------------------------------------- power series

def _unit_like(v: FormalSum) -> FormalSum:
    return FormalSum.one(v.skel, v.is_directed(), v.cap)


def _series(y: FormalSum, coeffs, cap) -> FormalSum:
    """Σ coeffs[n] y^n truncated at cap (y has no degree-0 part)."""
    one = FormalSum.one(y.skel, y.is_directed(), cap)
    out = one * coeffs(0)
    p = one
    for n in range(1, cap + 1):
        p = product(p, y.with_cap(cap))
        if not p:
            break
        out = out + p * coeffs(n)
    return out


def _split(v: FormalSum, cap):
    if cap is None:
        cap = v.cap
    if cap is None:
        raise ValueError("power series need a degree cap")
    c0 = v.constant()
    y = v.with_cap(cap) - _unit_like(v).with_cap(cap) * c0
    return c0, y, cap


def exp(v: FormalSum, cap=None) -> FormalSum:
    """e^v for v without degree-0 part."""
    c0, y, cap = _split(v, cap)
    if c0:
        raise ValueError("exp needs a nilpotent (degree > 0) argument")
    return _series(y, lambda n: Fraction(1, math.factorial(n)), cap)


def log(v: FormalSum, cap=None) -> FormalSum:
    c0, y, cap = _split(v, cap)
    if c0 != 1:
        raise ValueError("log needs a perturbation of the identity")
    return _series(y, lambda n: Fraction(0) if n == 0 else Fraction((-1) ** (n + 1), n), cap)


def inverse(v: FormalSum, cap=None) -> FormalSum:
    c0, y, cap = _split(v, cap)
    if c0 != 1:
        raise ValueError("inverse needs a perturbation of the identity")
    return _series(y, lambda n: Fraction((-1) ** n), cap)


def sqrt(v: FormalSum, cap=None) -> FormalSum:
    c0, y, cap = _split(v, cap)
    if c0 != 1:
        raise ValueError("sqrt needs a perturbation of the identity")

    def binom(n):
        r = Fraction(1)
        for j in range(n):
            r *= (Fraction(1, 2) - j) / (j + 1)
        return r
    return _series(y, binom, cap)


def commutator(x: FormalSum, y: FormalSum) -> FormalSum:
    return product(x, y) - product(y, x)


def prod(*xs) -> FormalSum:
    acc = xs[0]
    for y in xs[1:]:
        acc = product(acc, y)
    return acc


# ---------------------------------------------------------------- named elements

def _chord(skel, c1, p1, c2, p2, tail_first=None) -> Diagram:
    """One chord; tail_first None gives an undirected chord."""
    legs = ((c1, p1), (c2, p2))
    dirs = None if tail_first is None else (tail_first, not tail_first)
    return Diagram(tuple(skel), legs, (1, 0), dirs)


def omega(cap=None) -> FormalSum:
    """Ω: one chord between ↑1 and ↑2."""
    return FormalSum.of(_chord(("I", "I"), 0, 0, 1, 0), 1, cap)


def casimir(cap=None) -> FormalSum:
    """C: one chord with both ends on ↑."""
    return FormalSum.of(_chord(("I",), 0, 0, 0, 1), 1, cap)


def r_kz(cap: int) -> FormalSum:
    """R = exp(Ω/2)."""
    return exp(omega(cap) * Fraction(1, 2), cap)


def rarrow(cap=None) -> FormalSum:
    """r⃗: the arrow from ↑2 to ↑1 (head on strand 1)."""
    return FormalSum.of(_chord(("I", "I"), 0, 0, 1, 0, tail_first=False), 1, cap)


def right_arrow(cap=None) -> FormalSum:
    """The arrow from ↑1 to ↑2."""
    return FormalSum.of(_chord(("I", "I"), 0, 0, 1, 0, tail_first=True), 1, cap)


left_arrow = rarrow


def left_half_circle(cap=None) -> FormalSum:
    """Directed C with its head on the lower leg (μ of r⃗)."""
    return FormalSum.of(_chord(("I",), 0, 0, 0, 1, tail_first=False), 1, cap)


def right_half_circle(cap=None) -> FormalSum:
    """Directed C with its head on the upper leg (μ of r⃗²¹)."""
    return FormalSum.of(_chord(("I",), 0, 0, 0, 1, tail_first=True), 1, cap)


def _tadpole(leg_in: bool) -> Diagram:
    # leg 0 on ↑, internal vertex (1, 2, 3); the loop runs 3 -> 2, i.e. from
    # the last port to the middle one in the vertex's cyclic order
    mate = (1, 0, 3, 2)
    dirs = (not leg_in, leg_in, False, True)
    return Diagram(("I",), ((0, 0),), mate, dirs)


def tadpole_down(cap=None) -> FormalSum:
    """Tadpole whose stem points into the skeleton (incoming leg)."""
    return FormalSum.of(_tadpole(True), 1, cap)


def tadpole_up(cap=None) -> FormalSum:
    """Tadpole whose stem points away from the skeleton (outgoing leg)."""
    return FormalSum.of(_tadpole(False), 1, cap)


def tadpole(cap=None) -> FormalSum:
    return tadpole_down(cap) + tadpole_up(cap)


def rho(cap=None) -> FormalSum:
    """ϱ = ½(left half circle − right half circle)."""
    return (left_half_circle(cap) - right_half_circle(cap)) * Fraction(1, 2)


def strut(name: str = "*") -> FormalSum:
    """The 2-legged B-element: one arc with both ends on the color."""
    return FormalSum.of(Diagram((name,), ((0, 0), (0, 0)), (1, 0), None))


def wheel(n: int, name: str = "*") -> FormalSum:
    """ω_n: an n-cycle of internal vertices, each with one spoke to the color.

    Vertex j has ports (spoke, previous rim, next rim).
    """
    if n < 2:
        raise ValueError("wheels have at least two spokes")
    L = n
    mate = [0] * (L + 3 * n)
    for j in range(n):
        b = L + 3 * j
        mate[j], mate[b] = b, j
        nb = L + 3 * ((j + 1) % n)
        mate[b + 2], mate[nb + 1] = nb + 1, b + 2
    legs = tuple((0, 0) for _ in range(n))
    return FormalSum.of(Diagram((name,), legs, tuple(mate), None))


def disjoint_union(x: FormalSum, y: FormalSum) -> FormalSum:
    """x ⊔ y on the same skeleton of colors (the product of B)."""
    _check_same(x, y)
    n = len(x.skel)
    plan = [(t, [(k, False), (n + k, False)]) for k, t in enumerate(x.skel)]
    return contract([x, y], plan)


NAMED = {
    "Omega": lambda cap=None: omega(cap),
    "C": lambda cap=None: casimir(cap),
    "R": lambda cap=None: r_kz(2 if cap is None else cap),
    "rho": lambda cap=None: rho(cap),
    "rarrow": lambda cap=None: rarrow(cap),
    "wheel2": lambda cap=None: wheel(2),
    "wheel4": lambda cap=None: wheel(4),
}


def named(token: str, cap=None) -> FormalSum:
    try:
        return NAMED[token](cap)
    except KeyError:
        raise KeyError(f"unknown element {token!r}; known: {', '.join(NAMED)}") from None
