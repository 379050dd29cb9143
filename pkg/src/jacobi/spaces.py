"""Formal sums of diagrams, relation sets and quotient spaces."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import diagram as dg
from .diagram import Diagram, Graph
from .rat import RowEchelonBasis, axpy


class ConsistencyError(RuntimeError):
    pass


class NotBoundaryConnected(ValueError):
    pass


# ---------------------------------------------------------------- formal sums

class FormalSum:
    """Rational combination of canonical diagrams on a common skeleton.

    Terms are keyed by intern id.  ``cap`` (if not None) is the degree above
    which terms are dropped; results of products are valid mod degree > cap.
    """

    __slots__ = ("skel", "terms", "cap")

    def __init__(self, skel, terms=None, cap=None):
        self.skel = tuple(skel)
        self.terms = {} if terms is None else terms
        self.cap = cap

    @classmethod
    def zero(cls, skel, cap=None):
        return cls(skel, {}, cap)

    @classmethod
    def one(cls, skel, directed=False, cap=None):
        i = dg.intern(dg.empty(skel, directed))
        return cls(skel, {i: Fraction(1)}, cap)

    @classmethod
    def of(cls, d: Diagram, c=1, cap=None):
        s = cls(d.skel, {}, cap)
        s.add(d, c)
        return s

    @classmethod
    def sum_of(cls, skel, pairs, cap=None):
        s = cls(skel, {}, cap)
        for d, c in pairs:
            s.add(d, c)
        return s

    def add(self, d: Diagram, c=1) -> None:
        """Add c*d in place, canonicalizing d (AS signs applied)."""
        if self.cap is not None and d.degree > self.cap:
            return
        i, s = dg.canon_id(d)
        if s:
            self.add_id(i, s * c)

    def add_id(self, i: int, c) -> None:
        v = self.terms.get(i, 0) + c
        if v:
            self.terms[i] = Fraction(v)
        else:
            self.terms.pop(i, None)

    def copy(self) -> "FormalSum":
        return FormalSum(self.skel, dict(self.terms), self.cap)

    def items(self):
        return ((dg.lookup(i), c) for i, c in sorted(self.terms.items(), key=_tkey))

    def __iter__(self):
        return self.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def _cap2(self, other):
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    def _check(self, other):
        if self.skel != other.skel:
            raise ValueError(f"skeleton mismatch {self.skel} vs {other.skel}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalSum.one(self.skel, self.is_directed(), self.cap) * other
        self._check(other)
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return FormalSum(self.skel, t, self._cap2(other)).truncate()

    __radd__ = __add__

    def __neg__(self):
        return FormalSum(self.skel, {i: -c for i, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            from .maps import product
            return product(self, other)
        if other == 0:
            return FormalSum(self.skel, {}, self.cap)
        return FormalSum(self.skel, {i: c * other for i, c in self.terms.items()}, self.cap)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        return self * (Fraction(1) / other)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.skel == other.skel and self.terms == other.terms

    def __hash__(self):
        return hash((self.skel, frozenset(self.terms.items())))

    def with_cap(self, cap):
        return FormalSum(self.skel, dict(self.terms), cap).truncate()

    def truncate(self):
        if self.cap is not None:
            for i in [i for i in self.terms if dg.lookup(i).degree > self.cap]:
                del self.terms[i]
        return self

    def degree_part(self, k: int) -> "FormalSum":
        return FormalSum(self.skel, {i: c for i, c in self.terms.items()
                                     if dg.lookup(i).degree == k}, self.cap)

    def max_degree(self) -> int:
        return max((dg.lookup(i).degree for i in self.terms), default=-1)

    def constant(self) -> Fraction:
        """Coefficient of the empty diagram."""
        for i, c in self.terms.items():
            if dg.lookup(i).degree == 0:
                return c
        return Fraction(0)

    def is_directed(self) -> bool:
        for i in self.terms:
            return dg.lookup(i).dirs is not None
        return False

    def map_diagrams(self, f, skel=None) -> "FormalSum":
        """Linear extension of f: Diagram -> iterable of (Diagram, coeff)."""
        out = FormalSum(self.skel if skel is None else skel, {}, self.cap)
        for i, c in self.terms.items():
            for d, a in f(dg.lookup(i)):
                out.add(d, a * c)
        return out

    def __repr__(self):
        parts = []
        for d, c in self.items():
            parts.append(f"{c}*<{d.nlegs}L{d.nint}V#{dg.intern(d)}>")
        return f"FormalSum({' '.join(self.skel)}: " + (" + ".join(parts) or "0") + ")"


def _tkey(item):
    i, c = item
    d = dg.lookup(i)
    return (d.degree, d.legs, d.mate, d.dirs or ())


# ---------------------------------------------------------------- local relations

def stu_terms(d: Diagram, leg: int):
    """The S, T, U diagrams at a leg attached to an internal vertex.

    Returns None if the leg is on a color or attached to another leg.  With
    the vertex's cyclic order (leg, x, y): S = T - U where T carries the
    x-leg before the y-leg along the component.
    """
    c, p = d.legs[leg]
    if dg.is_color(d.skel[c]):
        return None
    h = d.mate[leg]
    L = d.nlegs
    if h < L:
        return None
    w = (h - L) // 3
    base = L + 3 * w
    o = h - base
    x, y = base + (o + 1) % 3, base + (o + 2) % 3
    g = Graph.of(d)
    mx, my = g.mate[x], g.mate[y]
    out = []
    for first, second in ((x, y), (y, x)):
        t = g.copy()
        del t.legs[leg]
        del t.verts[w]
        for lab in (h, x, y, leg):
            t.mate.pop(lab, None)
            if t.dirs is not None:
                t.dirs.pop(lab, None)
        nx, ny = ("n", x), ("n", y)
        pos = {first: p - 0.25, second: p + 0.25}
        t.legs[nx] = (c, pos[x])
        t.legs[ny] = (c, pos[y])
        dx = None if g.dirs is None else g.dirs[x]
        dy = None if g.dirs is None else g.dirs[y]
        if mx == y:
            t.connect(nx, ny, dx)
        else:
            t.connect(nx, mx, dx)
            t.connect(ny, my, dy)
        out.append(t.diagram())
    return d, out[0], out[1]


def _with_dir(d: Diagram, h: int, tail: bool) -> Diagram:
    dirs = list(d.dirs)
    dirs[h] = tail
    dirs[d.mate[h]] = not tail
    return Diagram(d.skel, d.legs, d.mate, tuple(dirs))


def stu_relation(d: Diagram, leg: int):
    """Relation terms [(diagram, coeff)] of STU at leg, or None.

    Directed diagrams: the leg edge is summed over both directions, the other
    edges keep theirs: S(in) + S(out) - T + U.
    """
    r = stu_terms(d, leg)
    if r is None:
        return None
    S, T, U = r
    if d.dirs is None:
        return [(S, 1), (T, -1), (U, 1)]
    return [(_with_dir(S, leg, True), 1), (_with_dir(S, leg, False), 1), (T, -1), (U, 1)]


def ihx_diagrams(d: Diagram, h: int):
    """The three diagrams of IHX around the internal edge through half-edge h.

    With u = (e, a, b) and v = (e', c, d) in cyclic order, returns D1 (the
    input), D2 with u = (e, b, c), v = (e', a, d) and D3 with u = (e, c, a),
    v = (e', b, d); the relation is D1 + D2 + D3 = 0.
    """
    L = d.nlegs
    h2 = d.mate[h]
    if h < L or h2 < L:
        return None
    u, v = (h - L) // 3, (h2 - L) // 3
    if u == v:
        return None
    bu, bv = L + 3 * u, L + 3 * v
    a, b = bu + (h - bu + 1) % 3, bu + (h - bu + 2) % 3
    c, e4 = bv + (h2 - bv + 1) % 3, bv + (h2 - bv + 2) % 3
    g = Graph.of(d)
    stubs = (a, b, c, e4)
    target = {s: g.mate[s] for s in stubs}
    sdir = {s: (None if g.dirs is None else g.dirs[s]) for s in stubs}
    out = []
    for (p1, p2), (q1, q2) in (((a, b), (c, e4)), ((b, c), (a, e4)), ((c, a), (b, e4))):
        t = g.copy()
        t.verts[u] = (h, ("u", 1), ("u", 2))
        t.verts[v] = (h2, ("v", 1), ("v", 2))
        for s in stubs:
            t.mate.pop(s, None)
            if t.dirs is not None:
                t.dirs.pop(s, None)
        new = {p1: ("u", 1), p2: ("u", 2), q1: ("v", 1), q2: ("v", 2)}
        done = set()
        for s in stubs:
            if s in done:
                continue
            tg = target[s]
            if tg in new:
                t.connect(new[s], new[tg], sdir[s])
                done.add(tg)
            else:
                t.connect(new[s], tg, sdir[s])
            done.add(s)
        out.append(t.diagram())
    return out


def ihx_relation(d: Diagram, h: int):
    ds = ihx_diagrams(d, h)
    if ds is None:
        return None
    if d.dirs is None:
        return [(x, 1) for x in ds]
    terms = []
    # the middle edge sits at port 0 of u in the rebuilt diagrams
    hu = d.nlegs + 3 * ((h - d.nlegs) // 3)
    for x in ds:
        terms.append((_with_dir(x, hu, True), 1))
        terms.append((_with_dir(x, hu, False), 1))
    return terms


def six_t_relations(d: Diagram):
    """6T relations built on a directed chord diagram d (two extra chords).

    Three labeled markers a, b, c are inserted into the skeleton; with
    r^{xy} the arrow with head at x and tail at y, the relation is
    [r^ab, r^ac] + [r^ab, r^bc] + [r^ac, r^bc] = 0.
    """
    skel = d.skel
    # slots: (comp, gap) where gap g sits between legs g-1 and g
    slots = []
    for c, tok in enumerate(skel):
        k = len(d.legs_on(c))
        if dg.is_interval(tok):
            slots.extend((c, g) for g in range(k + 1))
        elif dg.is_circle(tok):
            slots.extend((c, g) for g in range(max(k, 1)))
    words = [
        ((("a", "b"), ("a", "c")), 1), ((("a", "c"), ("a", "b")), -1),
        ((("a", "b"), ("b", "c")), 1), ((("b", "c"), ("a", "b")), -1),
        ((("a", "c"), ("b", "c")), 1), ((("b", "c"), ("a", "c")), -1),
    ]
    rels = []
    # choose a slot per marker; markers sharing a slot get an order
    for sa, sb, sc in itertools.product(slots, repeat=3):
        groups = {}
        for mk, s in (("a", sa), ("b", sb), ("c", sc)):
            groups.setdefault(s, []).append(mk)
        keys = list(groups)
        for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
            place = {}
            for k, pm in zip(keys, perms):
                for r, mk in enumerate(pm):
                    place[mk] = (k, r)
            rel = []
            for word, sgn in words:
                rel.append((_insert_arrows(d, place, word), sgn))
            rels.append(rel)
    return rels


def _insert_arrows(d: Diagram, place, word):
    """Insert arrows (head marker, tail marker) in product order at markers."""
    g = Graph.of(d)
    # endpoints at each marker in product order
    at = {"a": [], "b": [], "c": []}
    for n, (hm, tm) in enumerate(word):
        at[hm].append((n, "h"))
        at[tm].append((n, "t"))
    for mk, ((c, gap), r) in place.items():
        for k, (n, end) in enumerate(at[mk]):
            # between leg gap-1 and leg gap; markers in a slot ordered by r
            g.legs[(n, end)] = (c, gap - 0.5 + 0.1 * r + 0.01 * k)
    for n in range(len(word)):
        g.connect((n, "t"), (n, "h"), True)
    return g.diagram()


# ---------------------------------------------------------------- relation sets

@dataclass(frozen=True)
class RelationSet:
    name: str
    directed: bool = False
    chords: bool = False
    legs: object = ""         # "in"/"out" for every component, or a per-component tuple
    verma: tuple = ()         # per component "+", "-" or ""
    acyclic: bool = False
    six_t: bool = False

    def proper(self, d: Diagram) -> bool:
        """Diagram already in the top-level form of the Verma quotient."""
        for c, f in enumerate(self.verma):
            if not f:
                continue
            for i in d.legs_on(c):
                if d.incoming(i) != (f == "-"):
                    return False
        return True


A = RelationSet("A")
ACHORD = RelationSet("Achord", chords=True)
AARROW = RelationSet("Aarrow", directed=True)
AARROW_PLUS = RelationSet("AarrowPlus", directed=True, legs="in")
AARROW_MINUS = RelationSet("AarrowMinus", directed=True, legs="out")
MPLUS = RelationSet("MPlus", directed=True, verma=("+",))
MMINUS = RelationSet("MMinus", directed=True, verma=("-",))
POLYAK_CHORD = RelationSet("PolyakChord", directed=True, chords=True, six_t=True)
POLYAK_ACYCLIC = RelationSet("PolyakAcyclic", directed=True, acyclic=True)

NAMED = {r.name: r for r in (A, ACHORD, AARROW, AARROW_PLUS, AARROW_MINUS, MPLUS, MMINUS,
                             POLYAK_CHORD, POLYAK_ACYCLIC)}


def verma(flags) -> RelationSet:
    """Aarrow modulo RI on '+' components and RO on '-' components."""
    flags = tuple(flags)
    return RelationSet("Verma" + "".join(f or "." for f in flags), directed=True, verma=flags)


def _legs_ok(d: Diagram, rs: RelationSet) -> bool:
    for i, (c, _) in enumerate(d.legs):
        want = rs.legs if isinstance(rs.legs, str) else rs.legs[c]
        if want == "in" and not d.incoming(i):
            return False
        if want == "out" and d.incoming(i):
            return False
    return True


def restricted(flags) -> RelationSet:
    """Aarrow on diagrams whose legs on component k are all flags[k] ('in', 'out' or '')."""
    flags = tuple(flags)
    return RelationSet("Aarrow" + "".join({"in": "+", "out": "-"}.get(f, ".") for f in flags),
                       directed=True, legs=flags)


def columns(skel, m: int, rs: RelationSet, connected_body_only: bool = True) -> list:
    if rs.chords:
        ds = dg.enumerate_chord_diagrams(skel, m, rs.directed)
    else:
        ds = dg.enumerate_diagrams(skel, m, rs.directed, connected_body_only)
    if rs.legs:
        ds = [d for d in ds if _legs_ok(d, rs)]
    if rs.acyclic:
        ds = [d for d in ds if dg.is_acyclic(d)]
    return ds


def _y_diagrams(skel, m: int, directed: bool):
    """Chord diagrams of degree m-2 with one Y inserted, legs 0..2 on the Y.

    Every diagram with a single internal vertex whose three legs sit on the
    skeleton arises (possibly several times; repeats are dropped).
    """
    if m < 2:
        return []
    if any(dg.is_color(t) for t in skel):
        raise ValueError("4T needs a skeleton without colors")
    seen = set()
    out = []
    for e in dg.enumerate_chord_diagrams(skel, m - 2, directed):
        slots = []
        for c in range(len(skel)):
            k = sum(1 for cc, _ in e.legs if cc == c)
            slots += [(c, g - 0.5) for g in range(k + 1)]
        L = e.nlegs
        # legs 0..2 are the Y legs, then the chord legs, then the vertex
        mate = [L + 3 + j for j in range(3)]
        mate += [3 + h for h in e.mate]
        mate += [0, 1, 2]
        ydirs = [None] if not directed else [
            t for t in itertools.product((True, False), repeat=3) if len(set(t)) == 2]
        for pick in itertools.product(slots, repeat=3):
            for ranks in itertools.permutations(range(3)):
                ylegs = [(c, p + 0.1 * (1 + r)) for (c, p), r in zip(pick, ranks)]
                legs = dg.normalize_positions(skel, ylegs + list(e.legs))
                for yd in ydirs:
                    dirs = None
                    if directed:
                        dirs = tuple(yd) + tuple(e.dirs) + tuple(not t for t in yd)
                    d = Diagram(skel, legs, tuple(mate), dirs)
                    key = dg.canonical_key(d)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(d)
    return out



def generate_relations(skel, m: int, rs: RelationSet, connected_body_only: bool = True) -> list:
    """Relation instances of degree m as FormalSums."""
    skel = tuple(skel)
    out = []
    if rs.six_t:
        if m >= 2:
            for d in dg.enumerate_chord_diagrams(skel, m - 2, True):
                for rel in six_t_relations(d):
                    out.append(FormalSum.sum_of(skel, rel))
        return [r for r in out if r]
    if rs.chords:
        # 4T as the difference of STU at two legs of a Y
        for d in _y_diagrams(skel, m, rs.directed):
            for l1, l2 in itertools.combinations(range(3), 2):
                r1 = stu_relation(d, l1)
                r2 = stu_relation(d, l2)
                terms = [(x, c) for x, c in r1 if x.nint == 0]
                terms += [(x, -c) for x, c in r2 if x.nint == 0]
                out.append(FormalSum.sum_of(skel, terms))
        return [r for r in out if r]

    cols = columns(skel, m, rs, connected_body_only)
    colset = set(cols)
    gen = cols
    restricted = bool(rs.legs) or rs.acyclic
    for d in gen:
        if rs.directed and dg.has_sink_or_source(d):
            out.append(FormalSum.of(d))
            continue
        rels = []
        for leg in range(d.nlegs):
            r = stu_relation(d, leg)
            if r is not None:
                rels.append(r)
        seen_e = set()
        for h in range(d.nlegs, len(d.mate)):
            e = frozenset((h, d.mate[h]))
            if e in seen_e:
                continue
            seen_e.add(e)
            r = ihx_relation(d, h)
            if r is not None:
                rels.append(r)
        for r in rels:
            if rs.directed:
                r = [(x, c) for x, c in r if not dg.has_sink_or_source(x)]
            if restricted:
                ok = True
                for x, c in r:
                    cx, s = dg.canonical_key(x)
                    if s and cx not in colset:
                        ok = False
                        break
                if not ok:
                    continue
            out.append(FormalSum.sum_of(skel, r))
    for c, f in enumerate(rs.verma):
        if not f:
            continue
        for d in cols:
            ls = d.legs_on(c)
            if ls and d.incoming(ls[-1]) == (f == "+"):
                out.append(FormalSum.of(d))
    return [r for r in out if r]


# ---------------------------------------------------------------- quotients

@dataclass
class Level:
    cols: list
    rank_of: dict
    echelon: RowEchelonBasis
    basis: list
    nrel: int = 0


@dataclass
class QuotientSpace:
    """A graded quotient of the span of diagrams on a skeleton by a relation set.

    Columns are ordered by decreasing number of legs, so the basis (non-pivot
    columns) is adapted to the leg filtration and reduction never raises the
    number of legs.
    """

    skel: tuple
    cap: int
    rs: RelationSet = A
    connected_body_only: bool = True
    levels: dict = field(default_factory=dict)

    def __post_init__(self):
        self.skel = tuple(self.skel)
        if self.rs.verma and len(self.rs.verma) != len(self.skel):
            raise ValueError("Verma flags must match the skeleton")
        for c, f in enumerate(self.rs.verma):
            if f and not dg.is_interval(self.skel[c]):
                raise ValueError("RI/RO need an interval component")

    def level(self, m: int) -> Level:
        lv = self.levels.get(m)
        if lv is None:
            lv = self._build(m)
            self.levels[m] = lv
        return lv

    def _build(self, m: int) -> Level:
        cols = columns(self.skel, m, self.rs, self.connected_body_only)
        ids = [dg.intern(d) for d in cols]
        if self.rs.verma:
            keyed = sorted(range(len(cols)),
                           key=lambda k: (-cols[k].nlegs, self.rs.proper(cols[k]), k))
        else:
            keyed = sorted(range(len(cols)), key=lambda k: (-cols[k].nlegs, k))
        rank_of = {ids[k]: r for r, k in enumerate(keyed)}
        ech = RowEchelonBasis(order=rank_of)
        n = 0
        for rel in generate_relations(self.skel, m, self.rs, self.connected_body_only):
            for i in rel.terms:
                if i not in rank_of:
                    raise ConsistencyError(f"relation term {i} outside the column set")
            ech.insert(rel.terms)
            n += 1
            if n > dg.CONFIG.rows_guard:
                raise dg.GuardExceeded(
                    f"more than {dg.CONFIG.rows_guard} relation rows on {self.skel} at degree {m}")
        piv = set(ech.rows)
        basis = [ids[k] for k in keyed if ids[k] not in piv]
        return Level(ids, rank_of, ech, basis, n)

    def build(self):
        for m in range(self.cap + 1):
            self.level(m)
        return self

    def dim(self, m: int) -> int:
        return len(self.level(m).basis)

    def basis(self, m: int) -> list:
        return list(self.level(m).basis)

    def basis_all(self) -> list:
        return [i for m in range(self.cap + 1) for i in self.level(m).basis]

    def raw_count(self, m: int) -> int:
        return len(self.level(m).cols)

    def rank(self, m: int) -> int:
        return self.level(m).echelon.rank

    def reduce(self, v: FormalSum) -> dict:
        """Coordinates of v over the basis (dict basis id -> coefficient)."""
        if v.skel != self.skel:
            raise ConsistencyError(f"skeleton {v.skel} does not match {self.skel}")
        by_deg = {}
        for i, c in v.terms.items():
            by_deg.setdefault(dg.lookup(i).degree, {})[i] = c
        out = {}
        for m, part in by_deg.items():
            if m > self.cap:
                continue
            lv = self.level(m)
            for i in part:
                if i not in lv.rank_of:
                    raise ConsistencyError(f"diagram {i} is not among the enumerated columns")
            out.update(lv.echelon.reduce(part))
        return out

    def is_zero(self, v: FormalSum) -> bool:
        return not self.reduce(v)

    def equal(self, a: FormalSum, b: FormalSum) -> bool:
        return self.is_zero(a - b)

    def element(self, coords: dict) -> FormalSum:
        return FormalSum(self.skel, dict(coords), self.cap)


_spaces: dict = {}


def space(skel, cap: int, rs: RelationSet = A, connected_body_only: bool = True) -> QuotientSpace:
    """Shared QuotientSpace per (skeleton, relation set); levels are built lazily."""
    key = (tuple(skel), rs, connected_body_only)
    q = _spaces.get(key)
    if q is None:
        q = QuotientSpace(tuple(skel), cap, rs, connected_body_only)
        _spaces[key] = q
    elif q.cap < cap:
        q.cap = cap
    return q


def build_quotient(skel, cap: int, rs: RelationSet = A, connected_body_only: bool = True) -> QuotientSpace:
    return QuotientSpace(tuple(skel), cap, rs, connected_body_only).build()


def reduce(q: QuotientSpace, v: FormalSum) -> dict:
    return q.reduce(v)


# ---------------------------------------------------------------- STU to chords

def stu_to_chords(v: FormalSum) -> FormalSum:
    """Rewrite a formal sum on a 1-dim skeleton as chord diagrams via S = T - U."""
    for tok in v.skel:
        if dg.is_color(tok):
            raise ValueError("stu_to_chords needs intervals and circles only")
    out = FormalSum(v.skel, {}, v.cap)
    work = [(d, c) for d, c in v.items()]
    while work:
        d, c = work.pop()
        if d.nint == 0:
            out.add(d, c)
            continue
        if not dg.is_boundary_connected(d):
            raise NotBoundaryConnected("closed body component cannot be pushed to chords")
        leg = next(i for i in range(d.nlegs) if d.mate[i] >= d.nlegs)
        _, T, U = stu_terms(d, leg)
        for x, a in ((T, c), (U, -c)):
            i, s = dg.canon_id(x)
            if s:
                work.append((dg.lookup(i), a * s))
    return out
