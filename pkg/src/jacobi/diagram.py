"""Jacobi diagrams: representation, canonical forms, enumeration, text I/O.

A diagram has L legs (external vertices 0..L-1) and I internal vertices.
Half-edge h < L is the unique half-edge of leg h; internal vertex j owns
half-edges L+3j, L+3j+1, L+3j+2 listed in its cyclic order.  ``mate[h]`` is
the other half-edge of the edge through h (a self-loop at a vertex pairs two
of its own half-edges).  For directed diagrams ``dirs[h]`` is True when h is
the tail end of its edge.

A skeleton is a tuple of component tokens: 'I' (interval), 'O' (circle) or
'*name' (color).  Leg data is (component, position); positions on colors are
0, positions on intervals and circles are 0-based ranks.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class StructureError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    pass


class Diagram(NamedTuple):
    skel: tuple
    legs: tuple
    mate: tuple
    dirs: tuple | None = None

    @property
    def nlegs(self) -> int:
        return len(self.legs)

    @property
    def nint(self) -> int:
        return (len(self.mate) - len(self.legs)) // 3

    @property
    def degree(self) -> int:
        return (self.nlegs + self.nint) // 2

    @property
    def directed(self) -> bool:
        return self.dirs is not None

    def vertex(self, h: int) -> int:
        """Vertex owning half-edge h (legs first, then internal vertices)."""
        L = len(self.legs)
        return h if h < L else L + (h - L) // 3

    def ports(self, v: int) -> tuple:
        L = len(self.legs)
        if v < L:
            return (v,)
        b = L + 3 * (v - L)
        return (b, b + 1, b + 2)

    def legs_on(self, comp: int) -> list:
        """Leg indices on a component, sorted by position."""
        ls = [i for i, (c, _) in enumerate(self.legs) if c == comp]
        return sorted(ls, key=lambda i: self.legs[i][1])

    def incoming(self, leg: int) -> bool:
        """A leg is incoming when its edge points into the skeleton."""
        return not self.dirs[leg]


def is_interval(tok: str) -> bool:
    return tok == "I"


def is_circle(tok: str) -> bool:
    return tok == "O"


def is_color(tok: str) -> bool:
    return tok.startswith("*")


def validate(d: Diagram) -> None:
    H = len(d.mate)
    L = len(d.legs)
    if (H - L) % 3:
        raise StructureError("internal half-edges not a multiple of 3")
    for h, m in enumerate(d.mate):
        if not 0 <= m < H or m == h or d.mate[m] != h:
            raise StructureError(f"bad mate at half-edge {h}")
    if d.dirs is not None:
        if len(d.dirs) != H:
            raise StructureError("dirs length")
        for h, m in enumerate(d.mate):
            if d.dirs[h] == d.dirs[m]:
                raise StructureError(f"edge {h}-{m} has no consistent direction")
    for c, p in d.legs:
        if not 0 <= c < len(d.skel):
            raise StructureError(f"leg on missing component {c}")
    for c, tok in enumerate(d.skel):
        if is_color(tok):
            continue
        ps = sorted(p for cc, p in d.legs if cc == c)
        if len(set(ps)) != len(ps):
            raise StructureError(f"repeated position on component {c}")


def normalize_positions(skel, legs) -> tuple:
    """Compress positions to 0..k-1 per 1-dim component; colors get 0."""
    out = list(legs)
    for c, tok in enumerate(skel):
        idx = [i for i, (cc, _) in enumerate(legs) if cc == c]
        if is_color(tok):
            for i in idx:
                out[i] = (c, 0)
        else:
            idx.sort(key=lambda i: legs[i][1])
            for r, i in enumerate(idx):
                out[i] = (c, r)
    return tuple(out)


# ---------------------------------------------------------------- canonical form

def _refine(d: Diagram) -> list:
    """Labeling-independent vertex classes by iterated neighbourhood refinement."""
    skel, legs, mate, dirs = d
    L = len(legs)
    nv = L + (len(mate) - L) // 3

    def vert(h):
        return h if h < L else L + (h - L) // 3

    col = []
    circ_next = {}
    for c, tok in enumerate(skel):
        if is_circle(tok):
            ls = sorted((i for i in range(L) if legs[i][0] == c), key=lambda i: legs[i][1])
            for k, i in enumerate(ls):
                circ_next[i] = ls[(k + 1) % len(ls)]
    circ_prev = {b: a for a, b in circ_next.items()}
    for v in range(L):
        c, p = legs[v]
        tok = skel[c]
        if is_interval(tok):
            col.append((0, c, p))
        elif is_circle(tok):
            col.append((1, c, 0))
        else:
            col.append((2, c, 0))
    col.extend([(3, 0, 0)] * (nv - L))
    nbrs = [[] for _ in range(nv)]
    for h in range(len(mate)):
        nbrs[vert(h)].append((vert(mate[h]), -1 if dirs is None else int(dirs[h])))
    ncls = len(set(col))
    while True:
        sig = []
        for v in range(nv):
            s = (col[v], tuple(sorted((col[w], t) for w, t in nbrs[v])))
            if v in circ_next:
                s = s + (col[circ_next[v]], col[circ_prev[v]])
            sig.append(s)
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        col = [rank[s] for s in sig]
        if len(rank) == ncls:
            return col
        ncls = len(rank)


def _canon_search(d: Diagram):
    """Return (min_code, signs_at_min) over the admissible labelings."""
    skel, legs, mate, dirs = d
    L = len(legs)
    nint = (len(mate) - L) // 3
    nv = L + nint
    col = _refine(d)

    def vert(h):
        return h if h < L else L + (h - L) // 3

    def pkey(p):
        return (col[vert(mate[p])], 0 if dirs is None else dirs[p])

    fixed = []
    circles = []
    colors = []
    for c, tok in enumerate(skel):
        ls = [i for i in range(L) if legs[i][0] == c]
        if is_color(tok):
            colors.extend(ls)
        else:
            ls.sort(key=lambda i: legs[i][1])
            if is_interval(tok):
                fixed.extend((i, (c, r)) for r, i in enumerate(ls))
            else:
                circles.append((c, ls))

    rot_choices = []
    for _, ls in circles:
        if not ls:
            rot_choices.append((0,))
        else:
            mc = min(col[i] for i in ls)
            rot_choices.append(tuple(r for r, i in enumerate(ls) if col[i] == mc))

    def orders(w, q):
        base = L + 3 * (w - L)
        o = q - base
        a, b = base + (o + 1) % 3, base + (o + 2) % 3
        ka, kb = pkey(a), pkey(b)
        if ka < kb:
            return (((q, a, b), 1),)
        if kb < ka:
            return (((q, b, a), -1),)
        return (((q, a, b), 1), ((q, b, a), -1))

    best = None
    best_signs = set()
    for rots in itertools.product(*rot_choices):
        pre = list(fixed)
        for (c, ls), r in zip(circles, rots):
            k = len(ls)
            pre.extend((ls[(r + t) % k], (c, t)) for t in range(k))
        legdata = {i: dat for i, dat in pre}
        for i in colors:
            legdata[i] = (legs[i][0], 0)
        init_label = [-1] * nv
        for n, (i, _) in enumerate(pre):
            init_label[i] = n
        stack = [(init_label, len(pre), {}, 1, 0, [i for i, _ in pre])]
        while stack:
            label, nxt, porder, sign, qi, queue = stack.pop()
            branched = False
            while True:
                if qi < len(queue):
                    u = queue[qi]
                    hs = (u,) if u < L else porder[u]
                    choice = None
                    for h in hs:
                        w = vert(mate[h])
                        if label[w] < 0:
                            if w < L:
                                label[w] = nxt
                                nxt += 1
                                queue.append(w)
                            else:
                                choice = (w, mate[h])
                                break
                    if choice is None:
                        qi += 1
                        continue
                    w, q = choice
                    for ordr, s in orders(w, q):
                        lab2 = list(label)
                        lab2[w] = nxt
                        po2 = dict(porder)
                        po2[w] = ordr
                        stack.append((lab2, nxt + 1, po2, sign * s, qi, queue + [w]))
                    branched = True
                    break
                if nxt == nv:
                    break
                free_legs = [i for i in colors if label[i] < 0]
                if free_legs:
                    mc = min(col[i] for i in free_legs)
                    for i in free_legs:
                        if col[i] != mc:
                            continue
                        lab2 = list(label)
                        lab2[i] = nxt
                        stack.append((lab2, nxt + 1, dict(porder), sign, qi, queue + [i]))
                else:
                    free = [w for w in range(L, nv) if label[w] < 0]
                    mc = min(col[w] for w in free)
                    for w in free:
                        if col[w] != mc:
                            continue
                        base = L + 3 * (w - L)
                        for o in range(3):
                            for ordr, s in orders(w, base + o):
                                lab2 = list(label)
                                lab2[w] = nxt
                                po2 = dict(porder)
                                po2[w] = ordr
                                stack.append((lab2, nxt + 1, po2, sign * s, qi, queue + [w]))
                branched = True
                break
            if branched:
                continue
            code = _code(d, label, porder, legdata)
            if best is None or code < best:
                best = code
                best_signs = {sign}
            elif code == best:
                best_signs.add(sign)
    return best, best_signs


def _code(d: Diagram, label, porder, legdata):
    skel, legs, mate, dirs = d
    L = len(legs)
    nv = len(label)
    inv = [0] * nv
    for v, lab in enumerate(label):
        inv[lab] = v
    newh = [0] * len(mate)
    leg_order = []
    nl = ni = 0
    for v in inv:
        if v < L:
            newh[v] = nl
            leg_order.append(v)
            nl += 1
        else:
            b = L + 3 * ni
            p = porder[v]
            newh[p[0]] = b
            newh[p[1]] = b + 1
            newh[p[2]] = b + 2
            ni += 1
    H = len(mate)
    nm = [0] * H
    for h in range(H):
        nm[newh[h]] = newh[mate[h]]
    nd = None
    if dirs is not None:
        nd = [False] * H
        for h in range(H):
            nd[newh[h]] = dirs[h]
        nd = tuple(nd)
    return (tuple(legdata[i] for i in leg_order), tuple(nm), nd)


_canon_memo: dict = {}
_lock = threading.Lock()
_table: list = []
_ids: dict = {}


def canonical_key(d: Diagram):
    """(canonical Diagram, sign) with sign 0 for a self-negating diagram.

    The canonical Diagram is returned even when the sign is 0 so that the
    underlying abstract graph can still be identified.
    """
    d = Diagram(d.skel, normalize_positions(d.skel, d.legs), tuple(d.mate),
                None if d.dirs is None else tuple(d.dirs))
    hit = _canon_memo.get(d)
    if hit is not None:
        return hit
    if d.nint == 0 and all(is_interval(t) for t in d.skel):
        # chord diagrams on intervals: the leg order is already a labeling
        order = sorted(range(d.nlegs), key=lambda i: d.legs[i])
        new = {h: k for k, h in enumerate(order)}
        nm = tuple(new[d.mate[h]] for h in order)
        nd = None if d.dirs is None else tuple(d.dirs[h] for h in order)
        res = (Diagram(d.skel, tuple(d.legs[h] for h in order), nm, nd), 1)
        _canon_memo[d] = res
        return res
    code, signs = _canon_search(d)
    nl, nm, nd = code
    cd = Diagram(d.skel, nl, nm, nd)
    if len(signs) == 2:
        res = (cd, 0)
    else:
        res = (cd, signs.pop())
    _canon_memo[d] = res
    return res


@dataclass(frozen=True)
class CanonicalForm:
    diagram: Diagram | None
    sign: int

    @property
    def zero(self) -> bool:
        return self.sign == 0


def canonicalize(d: Diagram) -> CanonicalForm:
    validate(d)
    cd, s = canonical_key(d)
    return CanonicalForm(None if s == 0 else cd, s)


def intern(cd: Diagram) -> int:
    i = _ids.get(cd)
    if i is None:
        with _lock:
            i = _ids.get(cd)
            if i is None:
                i = len(_table)
                _table.append(cd)
                _ids[cd] = i
    return i


def lookup(i: int) -> Diagram:
    return _table[i]


def canon_id(d: Diagram):
    """(intern id, sign) of d, or (None, 0) if d is self-negating."""
    cd, s = canonical_key(d)
    if s == 0:
        return None, 0
    return intern(cd), s


def empty(skel: tuple, directed: bool = False) -> Diagram:
    return Diagram(tuple(skel), (), (), () if directed else None)


# ---------------------------------------------------------------- surgery

class Graph:
    """Mutable diagram with arbitrary hashable half-edge labels.

    ``legs`` maps a leg label to (component, position) where positions may be
    any sortable numbers; ``verts`` lists internal vertices as 3-tuples of
    labels in cyclic order; ``mate`` and ``dirs`` are keyed by label.
    """

    def __init__(self, skel, legs, verts, mate, dirs):
        self.skel = tuple(skel)
        self.legs = legs
        self.verts = verts
        self.mate = mate
        self.dirs = dirs

    @classmethod
    def of(cls, d: Diagram) -> "Graph":
        L = d.nlegs
        legs = {i: d.legs[i] for i in range(L)}
        verts = [d.ports(L + j) for j in range(d.nint)]
        mate = dict(enumerate(d.mate))
        dirs = None if d.dirs is None else dict(enumerate(d.dirs))
        return cls(d.skel, legs, verts, mate, dirs)

    def copy(self) -> "Graph":
        return Graph(self.skel, dict(self.legs), list(self.verts), dict(self.mate),
                     None if self.dirs is None else dict(self.dirs))

    def connect(self, a, b, a_is_tail=None):
        self.mate[a] = b
        self.mate[b] = a
        if self.dirs is not None:
            self.dirs[a] = bool(a_is_tail)
            self.dirs[b] = not a_is_tail

    def diagram(self) -> Diagram:
        leg_labels = list(self.legs)
        idx = {lab: i for i, lab in enumerate(leg_labels)}
        L = len(leg_labels)
        for j, vs in enumerate(self.verts):
            for k, lab in enumerate(vs):
                idx[lab] = L + 3 * j + k
        H = L + 3 * len(self.verts)
        mate = [0] * H
        for lab, i in idx.items():
            mate[i] = idx[self.mate[lab]]
        dirs = None
        if self.dirs is not None:
            dirs = [False] * H
            for lab, i in idx.items():
                dirs[i] = self.dirs[lab]
            dirs = tuple(dirs)
        legs = normalize_positions(self.skel, [self.legs[lab] for lab in leg_labels])
        return Diagram(self.skel, legs, tuple(mate), dirs)


# ---------------------------------------------------------------- enumeration

def _connected_graphs(nl: int, ni: int):
    """Connected multigraphs with nl univalent and ni trivalent vertices.

    Yields mate tuples in the half-edge convention above (one per abstract
    graph, up to symmetry-breaking duplicates).
    """
    H = nl + 3 * ni
    if H == 0 or H % 2:
        return
    nv = nl + ni

    def ports(v):
        return (v,) if v < nl else tuple(range(nl + 3 * (v - nl), nl + 3 * (v - nl) + 3))

    mate = [-1] * H
    touched = []
    is_t = [False] * nv
    first = 0 if nl else nl
    touched.append(first)
    is_t[first] = True

    def rec():
        # lowest unmatched port of a touched vertex
        p = -1
        for v in touched:
            for h in ports(v):
                if mate[h] < 0:
                    p = h
                    break
            if p >= 0:
                break
        if p < 0:
            if len(touched) == nv:
                yield tuple(mate)
            return
        cands = []
        for v in touched:
            for h in ports(v):
                if h != p and mate[h] < 0:
                    cands.append((h, None))
        nl_next = next((v for v in range(nl) if not is_t[v]), None)
        if nl_next is not None:
            cands.append((nl_next, nl_next))
        ni_next = next((v for v in range(nl, nv) if not is_t[v]), None)
        if ni_next is not None:
            cands.append((ports(ni_next)[0], ni_next))
        for h, newv in cands:
            mate[p] = h
            mate[h] = p
            if newv is not None:
                touched.append(newv)
                is_t[newv] = True
            yield from rec()
            if newv is not None:
                touched.pop()
                is_t[newv] = False
            mate[p] = -1
            mate[h] = -1

    yield from rec()


_comp_cache: dict = {}


def connected_components(nl: int, ni: int) -> list:
    """Distinct connected body graphs (as Diagrams on a single color)."""
    key = (nl, ni)
    if key in _comp_cache:
        return _comp_cache[key]
    seen = {}
    for m in _connected_graphs(nl, ni):
        d = Diagram(("*c",), tuple((0, 0) for _ in range(nl)), m, None)
        cd, _ = canonical_key(d)
        seen.setdefault(cd, cd)
    out = sorted(seen)
    _comp_cache[key] = out
    return out


def _component_types(m: int, closed: bool):
    """(nl, ni) types of connected components with degree <= m."""
    types = []
    for deg in range(1, m + 1):
        for nl in range(0, 2 * deg + 1):
            ni = 2 * deg - nl
            if (nl + 3 * ni) % 2:
                continue
            if nl == 0 and not closed:
                continue
            if nl == 2 and ni == 0 or ni > 0 or (nl == 0 and ni > 0):
                types.extend((deg, g) for g in connected_components(nl, ni))
    return types


def _disjoint_union(graphs):
    Ltot = sum(g.nlegs for g in graphs)
    # legs first (all graphs), then internal vertices graph by graph
    leg_off = 0
    int_off = Ltot
    maps = []
    for g in graphs:
        L = g.nlegs
        f = {}
        for h in range(L):
            f[h] = leg_off + h
        for h in range(L, len(g.mate)):
            f[h] = int_off + (h - L)
        maps.append(f)
        leg_off += L
        int_off += len(g.mate) - L
    H = int_off
    mate = [0] * H
    owner = []
    for gi, (g, f) in enumerate(zip(graphs, maps)):
        for h in range(len(g.mate)):
            mate[f[h]] = f[g.mate[h]]
        owner.extend([gi] * g.nlegs)
    return tuple(mate), owner


def _placements(skel, owner, ncopies_group):
    """Assign legs (labeled by owner graph) to skeleton slots.

    Yields leg tuples.  Identical graph copies are opened in order to cut
    symmetric duplicates; remaining duplicates are removed by the caller.
    """
    L = len(owner)
    comps = list(range(len(skel)))
    dims = [c for c in comps if not is_color(skel[c])]
    cols = [c for c in comps if is_color(skel[c])]

    # group id of each graph copy, and its rank within the group
    grp = ncopies_group
    legs = [None] * L

    def rec_1d(pos_list, used, opened):
        if len(pos_list) == 0:
            yield from rec_col(used)
            return
        c, p = pos_list[0]
        seen_graph = set()
        for i in range(L):
            if used[i]:
                continue
            g = owner[i]
            gid, rank = grp[g]
            if rank > opened.get(gid, 0):
                continue
            key = (g, i)
            if key in seen_graph:
                continue
            seen_graph.add(key)
            used[i] = True
            legs[i] = (c, p)
            op2 = opened
            if rank == opened.get(gid, 0):
                op2 = dict(opened)
                op2[gid] = rank + 1
            yield from rec_1d(pos_list[1:], used, op2)
            used[i] = False

    def rec_col(used):
        rest = [i for i in range(L) if not used[i]]
        if not cols:
            if not rest:
                yield tuple(legs)
            return
        for assign in itertools.product(cols, repeat=len(rest)):
            for i, c in zip(rest, assign):
                legs[i] = (c, 0)
            yield tuple(legs)

    n1 = L if not cols else None
    # distribute counts over 1-dim components
    if not dims:
        yield from rec_col([False] * L)
        return
    maxn = L
    for counts in itertools.product(range(maxn + 1), repeat=len(dims)):
        s = sum(counts)
        if s > L or (not cols and s != L):
            continue
        pos_list = [(c, p) for c, k in zip(dims, counts) for p in range(k)]
        yield from rec_1d(pos_list, [False] * L, {})
    del n1


@dataclass
class EnumConfig:
    guard: int = 2_000_000        # diagrams per (skeleton, degree)
    rows_guard: int = 5_000_000   # relation rows per (skeleton, degree)


CONFIG = EnumConfig()


def _undirected_abstract(skel: tuple, m: int, closed: bool) -> list:
    """All placed diagrams of degree m, deduplicated up to AS (zero ones kept)."""
    skel = tuple(skel)
    if m == 0:
        return [empty(skel)]
    types = _component_types(m, closed)
    seen = set()
    out = []

    # multisets of component types with total degree m
    def msets(start, remaining, acc):
        if remaining == 0:
            yield list(acc)
            return
        for t in range(start, len(types)):
            deg, g = types[t]
            if deg <= remaining:
                acc.append(t)
                yield from msets(t, remaining - deg, acc)
                acc.pop()

    for ms in msets(0, m, []):
        graphs = [types[t][1] for t in ms]
        mate, owner = _disjoint_union(graphs)
        grp = {}
        counter = {}
        for gi, t in enumerate(ms):
            r = counter.get(t, 0)
            grp[gi] = (t, r)
            counter[t] = r + 1
        L = len(owner)
        if L and not any(True for _ in skel):
            continue
        for legs in _placements(skel, owner, grp):
            d = Diagram(skel, legs, mate, None)
            cd, _ = canonical_key(d)
            if cd not in seen:
                seen.add(cd)
                out.append(cd)
                if len(out) > CONFIG.guard:
                    raise GuardExceeded(f"more than {CONFIG.guard} diagrams on {skel} at degree {m}")
    out.sort()
    return out


_enum_cache: dict = {}


def enumerate_diagrams(skel, m: int, directed: bool = False,
                       connected_body_only: bool = True) -> list:
    """Canonical diagrams of degree exactly m on skel (self-negating ones dropped).

    With ``connected_body_only`` every connected component of the body must
    have at least one leg.
    """
    key = (tuple(skel), m, directed, connected_body_only)
    if key in _enum_cache:
        return _enum_cache[key]
    base = _undirected_abstract(tuple(skel), m, not connected_body_only)
    if not directed:
        out = []
        for cd in base:
            _, s = canonical_key(cd)
            if s:
                out.append(cd)
    else:
        seen = set()
        out = []
        for cd in base:
            for dd in orientations(cd):
                c2, s = canonical_key(dd)
                if s and c2 not in seen:
                    seen.add(c2)
                    out.append(c2)
        out.sort(key=_dsort)
        if len(out) > CONFIG.guard:
            raise GuardExceeded(f"more than {CONFIG.guard} directed diagrams on {skel} at degree {m}")
    _enum_cache[key] = out
    return out


def _dsort(d):
    return (d.legs, d.mate, d.dirs)


def edges(d: Diagram) -> list:
    return [(h, d.mate[h]) for h in range(len(d.mate)) if h < d.mate[h]]


def orientations(d: Diagram):
    """All direction assignments of an undirected diagram."""
    es = edges(d)
    H = len(d.mate)
    for bits in itertools.product((True, False), repeat=len(es)):
        dirs = [False] * H
        for (a, b), t in zip(es, bits):
            dirs[a] = t
            dirs[b] = not t
        yield Diagram(d.skel, d.legs, d.mate, tuple(dirs))


def enumerate_chord_diagrams(skel, m: int, directed: bool = False) -> list:
    """All chord diagrams of degree m on a skeleton of intervals and circles."""
    skel = tuple(skel)
    if any(is_color(t) for t in skel):
        raise StructureError("chord diagrams need a 1-dimensional skeleton")
    seen = set()
    out = []
    n = 2 * m
    for counts in itertools.product(range(n + 1), repeat=len(skel)):
        if sum(counts) != n:
            continue
        legs = tuple((c, p) for c, k in enumerate(counts) for p in range(k))
        for mt in _matchings(list(range(n))):
            mate = [0] * n
            for a, b in mt:
                mate[a] = b
                mate[b] = a
            d = Diagram(skel, legs, tuple(mate), None)
            ds = orientations(d) if directed else (d,)
            for dd in ds:
                cd, s = canonical_key(dd)
                if cd not in seen:
                    seen.add(cd)
                    out.append(cd)
    if not skel and m == 0:
        out = [empty(skel, directed)]
    out.sort(key=_dsort)
    return out


def _matchings(pts):
    if not pts:
        yield []
        return
    a = pts[0]
    for i in range(1, len(pts)):
        rest = pts[1:i] + pts[i + 1:]
        for mt in _matchings(rest):
            yield [(a, pts[i])] + mt


# ---------------------------------------------------------------- queries

def is_chord_diagram(d: Diagram) -> bool:
    return d.nint == 0


def has_sink_or_source(d: Diagram) -> bool:
    if d.dirs is None:
        return False
    L = d.nlegs
    for j in range(d.nint):
        b = L + 3 * j
        t = d.dirs[b:b + 3]
        if all(t) or not any(t):
            return True
    return False


def body_components(d: Diagram) -> list:
    """Connected components of the body as lists of vertices."""
    nv = d.nlegs + d.nint
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, m in enumerate(d.mate):
        a, b = find(d.vertex(h)), find(d.vertex(m))
        if a != b:
            parent[a] = b
    groups = {}
    for v in range(nv):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def is_boundary_connected(d: Diagram) -> bool:
    return all(any(v < d.nlegs for v in g) for g in body_components(d))


def is_acyclic(d: Diagram) -> bool:
    """No directed cycle in the body."""
    nv = d.nlegs + d.nint
    succ = [[] for _ in range(nv)]
    for h, m in enumerate(d.mate):
        if d.dirs[h]:
            succ[d.vertex(h)].append(d.vertex(m))
    state = [0] * nv

    def dfs(v):
        state[v] = 1
        for w in succ[v]:
            if state[w] == 1:
                return False
            if state[w] == 0 and not dfs(w):
                return False
        state[v] = 2
        return True

    return all(state[v] or dfs(v) for v in range(nv))


# ---------------------------------------------------------------- text format

def _vname(d, v):
    return f"v{v}"


def to_text(d: Diagram, sign: int = 1) -> str:
    lines = ["skeleton " + " ".join(d.skel)]
    L = d.nlegs
    for i, (c, p) in enumerate(d.legs):
        if is_color(d.skel[c]):
            lines.append(f"ext e{i} {c + 1}")
        else:
            lines.append(f"ext e{i} {c + 1} {p + 1}")
    for j in range(d.nint):
        b = L + 3 * j
        lines.append(f"int v{j} h{b} h{b + 1} h{b + 2}")

    def hname(h):
        return f"e{h}" if h < L else f"h{h}"

    for a, b in edges(d):
        if d.dirs is None:
            lines.append(f"edge {hname(a)} {hname(b)}")
        elif d.dirs[a]:
            lines.append(f"edge {hname(a)} {hname(b)} ->")
        else:
            lines.append(f"edge {hname(b)} {hname(a)} ->")
    lines.append(f"sign {'+1' if sign > 0 else '-1'}")
    if abs(sign) != 1:
        lines.append(f"coeff {abs(Fraction(sign))}")
    return "\n".join(lines) + "\n"


def one_line(d: Diagram) -> str:
    """The text record of d on a single line, without the sign."""
    return "; ".join(to_text(d).splitlines()[:-1])


class ParseError(ValueError):
    def __init__(self, msg, lineno=None):
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)
        self.lineno = lineno


def parse_text(text: str) -> list:
    """Parse diagram records; returns a list of (Diagram, coefficient).

    The coefficient is the ``sign`` line times an optional ``coeff`` line.
    """
    out = []
    rec = []
    for n, raw in enumerate(text.splitlines() + [""], 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rec.append((n, line))
        elif rec:
            out.append(_parse_record(rec))
            rec = []
    return out


def _parse_record(rec):
    n0, first = rec[0]
    toks = first.split()
    if toks[0] != "skeleton":
        raise ParseError("record must start with 'skeleton'", n0)
    skel = tuple(toks[1:])
    for t in skel:
        if t not in ("I", "O") and not (t.startswith("*") and len(t) > 1):
            raise ParseError(f"bad skeleton token {t!r}", n0)
    exts = []
    ints = []
    eds = []
    sign = 1
    directed = None
    for n, line in rec[1:]:
        t = line.split()
        if t[0] == "ext":
            if len(t) not in (3, 4):
                raise ParseError("ext <vid> <comp> [<pos>]", n)
            c = int(t[2]) - 1
            if not 0 <= c < len(skel):
                raise ParseError(f"component {t[2]} out of range", n)
            p = int(t[3]) - 1 if len(t) == 4 else 0
            exts.append((t[1], c, p))
        elif t[0] == "int":
            if len(t) != 5:
                raise ParseError("int <vid> <h1> <h2> <h3>", n)
            ints.append((t[1], t[2:5]))
        elif t[0] == "edge":
            if len(t) == 3:
                d = False
            elif len(t) == 4 and t[3] == "->":
                d = True
            else:
                raise ParseError("edge <h-a> <h-b> [->]", n)
            if directed is None:
                directed = d
            elif directed != d:
                raise ParseError("mixed directed and undirected edges", n)
            eds.append((t[1], t[2], n))
        elif t[0] == "sign":
            if len(t) != 2 or t[1] not in ("+1", "-1", "1"):
                raise ParseError("sign must be +1 or -1", n)
            sign = -sign if t[1] == "-1" else sign
        elif t[0] == "coeff":
            try:
                sign = sign * Fraction(t[1])
            except (IndexError, ValueError, ZeroDivisionError):
                raise ParseError("coeff needs a rational number", n) from None
        else:
            raise ParseError(f"unknown keyword {t[0]!r}", n)
    L = len(exts)
    hidx = {}
    for i, (vid, c, p) in enumerate(exts):
        hidx[vid] = i
    for j, (vid, hs) in enumerate(ints):
        for k, h in enumerate(hs):
            if h in hidx:
                raise ParseError(f"duplicate half-edge {h}", n0)
            hidx[h] = L + 3 * j + k
    H = L + 3 * len(ints)
    mate = [-1] * H
    dirs = [False] * H
    for a, b, n in eds:
        if a not in hidx or b not in hidx:
            raise ParseError(f"unknown half-edge in edge {a} {b}", n)
        ha, hb = hidx[a], hidx[b]
        if mate[ha] >= 0 or mate[hb] >= 0 or ha == hb:
            raise ParseError("half-edge used twice", n)
        mate[ha], mate[hb] = hb, ha
        dirs[ha] = True
    if any(m < 0 for m in mate):
        raise ParseError("dangling half-edge", n0)
    legs = tuple((c, p) for _, c, p in exts)
    d = Diagram(skel, legs, tuple(mate), tuple(dirs) if directed else None)
    try:
        validate(d)
    except StructureError as e:
        raise ParseError(str(e), n0) from e
    return d, sign
