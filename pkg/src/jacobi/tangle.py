"""Parenthesized framed tangles and the invariant Z_H.

Tangles are words in the generators ra, la (associativity), ov, un
(braiding) and cp, cn, ap, an (creations and annihilations).  Each
generator is sent to a decorated skeleton and words are composed by
stacking, later generators on top.

Skeleton conventions.  A component is an interval with a tail and a head
endpoint, each ('b', i) or ('t', i) for position i on the bottom or top
object, or a circle.  An ↑ at the bottom is a tail, an ↓ at the bottom a
head; on the top it is the other way round.  Components of a generator are
ordered left to right; a composite orders its components by the smallest
tag they carry, bottom morphism first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import maps as M
from . import horizontal as hz
from .spaces import FormalSum, A, ACHORD, AARROW, RelationSet, space


class TangleError(ValueError):
    def __init__(self, msg, lineno=None):
        super().__init__(msg if lineno is None else f"line {lineno}: {msg}")
        self.lineno = lineno


# ---------------------------------------------------------------- parenthesized strings

EMPTY = ()
STAR = "*"
_ALIASES = {"↑": "u", "↓": "d", "⋆": "*", "x": "u", "?": ""}


def parse_paren(s: str):
    """'((ud)u)' -> (('u', 'd'), 'u'); 'u' -> 'u'; '' or 'e' -> ()."""
    s = "".join(_ALIASES.get(ch, ch) for ch in s if not ch.isspace())
    if s in ("", "e", "()"):
        return EMPTY
    pos = 0

    def items():
        nonlocal pos
        out = []
        while pos < len(s) and s[pos] != ")":
            ch = s[pos]
            if ch == "(":
                pos += 1
                sub = items()
                if pos >= len(s) or s[pos] != ")":
                    raise TangleError(f"unbalanced parentheses in {s!r}")
                pos += 1
                out.append(_node(sub, s))
            elif ch in "ud*":
                out.append(ch)
                pos += 1
            elif ch == "e":
                out.append(EMPTY)
                pos += 1
            else:
                raise TangleError(f"bad character {ch!r} in {s!r}")
        return out

    top = items()
    if pos != len(s):
        raise TangleError(f"unbalanced parentheses in {s!r}")
    return _node(top, s)


def _node(xs, s):
    if len(xs) == 0:
        return EMPTY
    if len(xs) == 1:
        return xs[0]
    if len(xs) == 2:
        return (xs[0], xs[1])
    raise TangleError(f"{s!r} is not fully parenthesized")


def paren_str(p) -> str:
    if p == EMPTY:
        return "e"
    if isinstance(p, str):
        return p
    return "(" + paren_str(p[0]) + paren_str(p[1]) + ")"


def flatten(p) -> tuple:
    if p == EMPTY:
        return ()
    if isinstance(p, str):
        return (p,)
    return flatten(p[0]) + flatten(p[1])


def collapse(p):
    """Drop empty leaves: (X, ()) -> X."""
    if isinstance(p, str) or p == EMPTY:
        return p
    a, b = collapse(p[0]), collapse(p[1])
    if a == EMPTY:
        return b
    if b == EMPTY:
        return a
    return (a, b)


def substitute(w, x):
    """W/{⋆ -> X}."""
    def rec(p):
        if p == STAR:
            return x
        if isinstance(p, str) or p == EMPTY:
            return p
        return (rec(p[0]), rec(p[1]))
    if flatten(w).count(STAR) != 1:
        raise TangleError(f"context {paren_str(w)} needs exactly one star")
    return collapse(rec(w))


def star_counts(w) -> tuple:
    f = flatten(w)
    k = f.index(STAR)
    return k, len(f) - k - 1


# ---------------------------------------------------------------- quasi-Hopf data

@dataclass
class QuasiHopfData:
    """(Φ, R, α, β, v) with the cabling coproduct twisted by ``cop_twist``.

    ``rs`` is the relation set used to compare decorations; chord-only
    structures may use the 4T quotient.
    """

    name: str
    cap: int
    phi: FormalSum
    R: FormalSum
    alpha: FormalSum
    beta: FormalSum
    v: FormalSum
    rs: RelationSet = A
    cop_twist: FormalSum | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def directed(self) -> bool:
        return self.rs.directed

    def one(self, n: int = 1) -> FormalSum:
        return FormalSum.one(("I",) * n, self.directed, self.cap)

    def cop(self, x: FormalSum, slot: int) -> FormalSum:
        """Δ on strand slot (0-based), conjugated by the twist if any."""
        y = M.cabling(x, slot, 2)
        if self.cop_twist is None:
            return y
        n = len(x.skel)
        F = M.pad(self.cop_twist, slot, n - slot - 1)
        Fi = M.pad(self._twist_inv(), slot, n - slot - 1)
        return M.prod(F, y, Fi)

    def _twist_inv(self):
        if "Finv" not in self._cache:
            self._cache["Finv"] = M.inverse(self.cop_twist, self.cap)
        return self._cache["Finv"]

    def delta0(self, x: FormalSum, slot: int, w) -> FormalSum:
        """Δ⁰_W on strand slot."""
        if w == EMPTY:
            return M.counit(x, slot)
        if isinstance(w, str):
            return x
        y = self.cop(x, slot)
        y = self.delta0(y, slot + 1, w[1])
        return self.delta0(y, slot, w[0])

    def delta_w(self, x: FormalSum, slot: int, w) -> FormalSum:
        """Δ_W = S_W Δ⁰_W on strand slot."""
        y = self.delta0(x, slot, w)
        for k, a in enumerate(flatten(w)):
            if a == "d":
                y = M.antipode(y, slot + k)
        return y

    def deltas(self, x: FormalSum, ws) -> FormalSum:
        """(Δ_{W1} ⊗ ... ⊗ Δ_{Wk})(x)."""
        y = x
        # apply right to left so earlier slot indices stay valid
        for k in reversed(range(len(ws))):
            y = self.delta_w(y, k, ws[k])
        return y

    # derived elements, cached
    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def phi_inv(self):
        return self.get("phi_inv", lambda: M.inverse(self.phi, self.cap))

    @property
    def R_inv(self):
        return self.get("R_inv", lambda: M.inverse(self.R, self.cap))

    @property
    def u(self):
        return self.get("u", lambda: u_element(self))

    @property
    def u_inv(self):
        return self.get("u_inv", lambda: M.inverse(self.u, self.cap))

    @property
    def v_inv(self):
        return self.get("v_inv", lambda: M.inverse(self.v, self.cap))

    def z_cn(self):
        """S(α) u v⁻¹."""
        return self.get("cn", lambda: M.prod(M.antipode(self.alpha), self.u, self.v_inv))

    def z_ap(self):
        """u⁻¹ v S(β)."""
        return self.get("ap", lambda: M.prod(self.u_inv, self.v, M.antipode(self.beta)))

    def space(self, skel):
        return space(tuple(skel), self.cap, self.rs)

    def equal(self, x: FormalSum, y: FormalSum) -> bool:
        return self.space(x.skel).equal(x, y)


def chain(elements, word, cap=None) -> FormalSum:
    """Contract tensor components into one strand.

    ``word`` lists (element index, component, antipode) in product order;
    every component of every element must be used once.
    """
    offs = []
    o = 0
    for e in elements:
        offs.append(o)
        o += len(e.skel)
    used = [(offs[i] + c, bool(s)) for i, c, s in word]
    if sorted(k for k, _ in used) != list(range(o)):
        raise ValueError("every tensor component must be used exactly once")
    return M.contract(list(elements), [("I", used)], cap)


def u_element(H: QuasiHopfData) -> FormalSum:
    """u = S(Ȳ β S(Z̄)) S(t) α s X̄ with Φ⁻¹ = X̄⊗Ȳ⊗Z̄ and R = s⊗t."""
    # S(Ȳ β S(Z̄)) = Z̄ S(β) S(Ȳ)
    els = [H.phi_inv, H.R, H.alpha, H.beta]
    word = [(0, 2, False), (3, 0, True), (0, 1, True), (1, 1, True),
            (2, 0, False), (1, 0, False), (0, 0, False)]
    return chain(els, word, H.cap)


def nu_element(phi: FormalSum, cap) -> FormalSum:
    """ν = (X S(Y) Z)⁻¹."""
    x = chain([phi], [(0, 0, False), (0, 1, True), (0, 2, False)], cap)
    return M.inverse(x, cap)


def a_kz(cap: int, assoc=None, directed: bool = False, chords: bool = True) -> QuasiHopfData:
    """A_KZ (or ι of it): Φ from the rational associator, R = e^{Ω/2}, α = ν, β = 1, v = e^{-C/2}."""
    assoc = assoc or solve_associator_cached(max(cap, 2))
    phi = hz.embed_hor(assoc.phi.with_cap(cap)).with_cap(cap)
    R = M.r_kz(cap)
    nu = nu_element(phi, cap)
    v = M.exp(M.casimir(cap) * Fraction(-1, 2), cap)
    one = FormalSum.one(("I",), False, cap)
    H = QuasiHopfData("akz", cap, phi, R, nu, one, v, ACHORD if chords else A)
    if directed:
        H = iota_structure(H)
    return H


def iota_structure(H: QuasiHopfData) -> QuasiHopfData:
    """Push a structure on A through ι to A⃗."""
    f = M.iota
    return QuasiHopfData(
        "a" + H.name if not H.name.startswith("ar") else H.name, H.cap,
        f(H.phi), f(H.R), f(H.alpha), f(H.beta), f(H.v), AARROW,
        None if H.cop_twist is None else f(H.cop_twist))


@lru_cache(maxsize=None)
def solve_associator_cached(cap: int):
    return hz.solve_associator(cap)


# ---------------------------------------------------------------- twisting

def twist(H: QuasiHopfData, F: FormalSum, name=None) -> QuasiHopfData:
    """H_F: Φ_F = F²³Δ₂(F)ΦΔ₁(F⁻¹)(F¹²)⁻¹, R_F = F²¹RF⁻¹, α_F = S(f̄)αḡ, β_F = fβS(g)."""
    cap = H.cap
    for i in (0, 1):
        if not H.equal(M.counit(F, i), H.one(1)):
            raise ValueError("degenerate twist: ε_i(F) ≠ 1")
    Fi = M.inverse(F, cap)
    phi_F = M.prod(M.pad(F, 1, 0), H.cop(F, 1), H.phi, H.cop(Fi, 0), M.pad(Fi, 0, 1))
    R_F = M.prod(M.permute(F, (2, 1)), H.R, Fi)
    alpha_F = chain([Fi, H.alpha], [(0, 0, True), (1, 0, False), (0, 1, False)], cap)
    beta_F = chain([F, H.beta], [(0, 0, False), (1, 0, False), (0, 1, True)], cap)
    tw = F if H.cop_twist is None else M.product(F, H.cop_twist)
    return QuasiHopfData(name or (H.name + "_F"), cap, phi_F, R_F, alpha_F, beta_F,
                         H.v, H.rs, tw)


def random_symmetric_twist(cap: int, seed: int = 0, directed: bool = False,
                           max_degree: int = 2) -> FormalSum:
    """1 + f + f²¹ with f a random combination of two-strand chord diagrams.

    Only diagrams touching both strands are used, so ε_i(F) = 1.
    """
    from . import diagram as dg
    rng = random.Random(seed)
    f = FormalSum(("I", "I"), {}, cap)
    for m in range(1, max_degree + 1):
        for d in dg.enumerate_chord_diagrams(("I", "I"), m):
            if {c for c, _ in d.legs} != {0, 1}:
                continue
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            if c:
                f.add(d, c)
    F = FormalSum.one(("I", "I"), False, cap) + f + M.permute(f, (2, 1))
    return M.iota(F) if directed else F


def f_w0(H: QuasiHopfData, F: FormalSum, w) -> FormalSum:
    """F⁰_∅ = 1, F⁰_a = 1, F⁰_{W1W2} = (F⁰_{W1}⊗F⁰_{W2})(Δ⁰_{W1}⊗Δ⁰_{W2})(F)."""
    if w == EMPTY:
        return FormalSum.one((), H.directed, H.cap)
    if isinstance(w, str):
        return H.one(1)
    left = f_w0(H, F, w[0])
    right = f_w0(H, F, w[1])
    d = H.delta0(H.delta0(F, 1, w[1]), 0, w[0])
    return M.product(M.tensor(left, right, cap=H.cap), d)


def g_w0(H: QuasiHopfData, F: FormalSum, w) -> FormalSum:
    """G⁰_{W1W2} = (Δ⁰_{W1}⊗Δ⁰_{W2})(F⁻¹)(G⁰_{W1}⊗G⁰_{W2})."""
    if w == EMPTY:
        return FormalSum.one((), H.directed, H.cap)
    if isinstance(w, str):
        return H.one(1)
    Fi = M.inverse(F, H.cap)
    left = g_w0(H, F, w[0])
    right = g_w0(H, F, w[1])
    d = H.delta0(H.delta0(Fi, 1, w[1]), 0, w[0])
    return M.product(d, M.tensor(left, right, cap=H.cap))


def s_w(x: FormalSum, w) -> FormalSum:
    for k, a in enumerate(flatten(w)):
        if a == "d":
            x = M.antipode(x, k)
    return x


def f_w(H, F, w):
    return s_w(f_w0(H, F, w), w)


def g_w(H, F, w):
    return s_w(g_w0(H, F, w), w)


# ---------------------------------------------------------------- HS morphisms

@dataclass
class HSMorphism:
    dom: tuple
    cod: tuple
    ends: list            # (tail, head) per interval, None per circle
    deco: FormalSum

    @property
    def skeleton(self) -> tuple:
        return self.deco.skel


def _strand_ends(obj, perm=None):
    """Straight strands from bottom i to top perm[i]."""
    perm = perm or list(range(len(obj)))
    ends = []
    for i, a in enumerate(obj):
        j = perm[i]
        ends.append((("b", i), ("t", j)) if a == "u" else (("t", j), ("b", i)))
    return ends


def identity_morphism(obj, H: QuasiHopfData) -> HSMorphism:
    obj = tuple(obj)
    return HSMorphism(obj, obj, _strand_ends(obj), H.one(len(obj)))


def decorated_strands(obj, x: FormalSum) -> HSMorphism:
    obj = tuple(obj)
    return HSMorphism(obj, obj, _strand_ends(obj), x)


def compose(m1: HSMorphism, m2: HSMorphism) -> HSMorphism:
    """m2 stacked on top of m1; decorations multiply from tail to head."""
    if tuple(m1.cod) != tuple(m2.dom):
        raise TangleError(f"cannot compose: {''.join(m1.cod)} vs {''.join(m2.dom)}")
    k1 = len(m1.ends)
    comps = [(1, i) for i in range(k1)] + [(2, i) for i in range(len(m2.ends))]
    gid = {c: (c[1] if c[0] == 1 else k1 + c[1]) for c in comps}
    tail1 = {e[0][1]: i for i, e in enumerate(m1.ends) if e is not None and e[0][0] == "t"}
    tail2 = {e[0][1]: i for i, e in enumerate(m2.ends) if e is not None and e[0][0] == "b"}

    def ends_of(c):
        return (m1.ends if c[0] == 1 else m2.ends)[c[1]]

    def nxt(c):
        head = ends_of(c)[1]
        if c[0] == 1 and head[0] == "t":
            return (2, tail2[head[1]])
        if c[0] == 2 and head[0] == "b":
            return (1, tail1[head[1]])
        return None

    def free(c, which):
        e = ends_of(c)[which]
        if c[0] == 1 and e[0] == "b":
            return ("b", e[1])
        if c[0] == 2 and e[0] == "t":
            return ("t", e[1])
        return None

    seen = set()
    chains = []
    for c in comps:
        e = ends_of(c)
        if e is None:
            seen.add(c)
            chains.append(([c], None))
            continue
        if free(c, 0) is None:
            continue
        ch = [c]
        seen.add(c)
        while True:
            n = nxt(ch[-1])
            if n is None:
                break
            ch.append(n)
            seen.add(n)
        chains.append((ch, (free(ch[0], 0), free(ch[-1], 1))))
    for c in comps:
        if c in seen:
            continue
        ch = [c]
        seen.add(c)
        n = nxt(c)
        while n != c:
            ch.append(n)
            seen.add(n)
            n = nxt(n)
        chains.append((ch, None))
    chains.sort(key=lambda t: min(gid[c] for c in t[0]))
    plan = []
    ends = []
    for ch, e in chains:
        closed = e is None
        plan.append(("O" if closed else "I", [(gid[c], False) for c in ch]))
        ends.append(e)
    deco = M.contract([m1.deco, m2.deco], plan)
    return HSMorphism(tuple(m1.dom), tuple(m2.cod), ends, deco)


def canonical_order(m: HSMorphism) -> HSMorphism:
    """Intervals sorted by tail endpoint, circles after them in their order."""
    idx = list(range(len(m.ends)))
    idx.sort(key=lambda k: (1, k) if m.ends[k] is None else (0, m.ends[k][0]))
    plan = [(m.deco.skel[k], [(k, False)]) for k in idx]
    return HSMorphism(m.dom, m.cod, [m.ends[k] for k in idx], M.merge(m.deco, plan))


def morphisms_equal(m1: HSMorphism, m2: HSMorphism, H: QuasiHopfData) -> bool:
    a, b = canonical_order(m1), canonical_order(m2)
    if (a.dom, a.cod, a.ends) != (b.dom, b.cod, b.ends):
        return False
    return H.equal(a.deco, b.deco)


# ---------------------------------------------------------------- generators and words

KINDS = ("ra", "la", "ov", "un", "cp", "cn", "ap", "an")


@dataclass(frozen=True)
class Generator:
    kind: str
    W: object = STAR
    A: object = "u"
    B: object = "u"
    C: object = "u"

    def objects(self):
        W, A, B, C = self.W, self.A, self.B, self.C
        k = self.kind
        if k == "ra":
            return substitute(W, ((A, B), C)), substitute(W, (A, (B, C)))
        if k == "la":
            return substitute(W, (A, (B, C))), substitute(W, ((A, B), C))
        if k in ("ov", "un"):
            return substitute(W, (A, B)), substitute(W, (B, A))
        if k == "cp":
            return substitute(W, EMPTY), substitute(W, ("d", "u"))
        if k == "cn":
            return substitute(W, EMPTY), substitute(W, ("u", "d"))
        if k == "ap":
            return substitute(W, ("d", "u")), substitute(W, EMPTY)
        if k == "an":
            return substitute(W, ("u", "d")), substitute(W, EMPTY)
        raise TangleError(f"unknown generator {k!r}")

    def __str__(self):
        parts = [self.kind, f"W={paren_str(self.W)}"]
        if self.kind in ("ra", "la", "ov", "un"):
            parts += [f"A={paren_str(self.A)}", f"B={paren_str(self.B)}"]
        if self.kind in ("ra", "la"):
            parts.append(f"C={paren_str(self.C)}")
        return " ".join(parts)


def gen(kind, W="*", A="u", B="u", C="u") -> Generator:
    p = lambda s: parse_paren(s) if isinstance(s, str) else s
    return Generator(kind, p(W), p(A), p(B), p(C))


@dataclass
class TangleWord:
    gens: list
    name: str = ""

    def domain(self):
        return self.gens[0].objects()[0]

    def target(self):
        return self.gens[-1].objects()[1]

    def check(self):
        for k in range(len(self.gens) - 1):
            cod = self.gens[k].objects()[1]
            dom = self.gens[k + 1].objects()[0]
            if cod != dom:
                raise TangleError(
                    f"generator {k + 2} ({self.gens[k + 1]}) expects {paren_str(dom)}, "
                    f"previous target is {paren_str(cod)}")
        return self

    def __str__(self):
        return "\n".join(str(g) for g in self.gens) + "\n"


def parse_word(text: str, name: str = "") -> TangleWord:
    """One generator per line: 'la W=((*u)u) A=u B=d C=u'; '#' starts a comment."""
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind not in KINDS:
            raise TangleError(f"unknown generator {kind!r}", lineno)
        kw = {}
        for t in toks[1:]:
            if "=" not in t:
                raise TangleError(f"expected key=value, got {t!r}", lineno)
            k, v = t.split("=", 1)
            if k not in ("W", "A", "B", "C"):
                raise TangleError(f"unknown key {k!r}", lineno)
            try:
                kw[k] = parse_paren(v)
            except TangleError as e:
                raise TangleError(str(e), lineno) from None
        try:
            g = Generator(kind, **kw)
            g.objects()
        except TangleError as e:
            raise TangleError(str(e), lineno) from None
        gens.append(g)
    if not gens:
        raise TangleError("empty tangle word")
    w = TangleWord(gens, name)
    try:
        w.check()
    except TangleError as e:
        raise TangleError(str(e)) from None
    return w


DATA = Path(__file__).parent / "data"


def builtin_words() -> dict:
    return {p.stem: parse_word(p.read_text(), p.stem) for p in sorted(DATA.glob("*.tangle"))}


def builtin(name: str) -> TangleWord:
    p = DATA / f"{name}.tangle"
    if not p.exists():
        raise KeyError(f"no built-in tangle {name!r}")
    return parse_word(p.read_text(), name)


# ---------------------------------------------------------------- evaluation

def z_generator(g: Generator, H: QuasiHopfData) -> HSMorphism:
    dom_p, cod_p = g.objects()
    dom, cod = flatten(dom_p), flatten(cod_p)
    n1, n2 = star_counts(g.W)
    k = g.kind
    if k in ("ra", "la"):
        x = H.phi_inv if k == "ra" else H.phi
        act = H.deltas(x, (g.A, g.B, g.C))
        return HSMorphism(dom, cod, _strand_ends(dom), M.pad(act, n1, n2))
    if k in ("ov", "un"):
        x = M.permute(H.R, (2, 1)) if k == "ov" else H.R_inv
        act = H.deltas(x, (g.A, g.B))
        a, b = len(flatten(g.A)), len(flatten(g.B))
        perm = list(range(n1))
        perm += [n1 + b + i for i in range(a)] + [n1 + i for i in range(b)]
        perm += [n1 + a + b + i for i in range(n2)]
        return HSMorphism(dom, cod, _strand_ends(dom, perm), M.pad(act, n1, n2))
    # creations and annihilations: left strands, the arc, right strands
    ends = []
    p = n1
    if k in ("cp", "cn"):
        for i in range(n1):
            ends.append((("b", i), ("t", i)) if dom[i] == "u" else (("t", i), ("b", i)))
        ends.append((("t", p), ("t", p + 1)) if k == "cp" else (("t", p + 1), ("t", p)))
        for i in range(n1, n1 + n2):
            ends.append((("b", i), ("t", i + 2)) if dom[i] == "u" else (("t", i + 2), ("b", i)))
        act = H.alpha if k == "cp" else H.z_cn()
    else:
        for i in range(n1):
            ends.append((("b", i), ("t", i)) if dom[i] == "u" else (("t", i), ("b", i)))
        ends.append((("b", p + 1), ("b", p)) if k == "ap" else (("b", p), ("b", p + 1)))
        for i in range(n1 + 2, n1 + 2 + n2):
            ends.append((("b", i), ("t", i - 2)) if dom[i] == "u" else (("t", i - 2), ("b", i)))
        act = H.z_ap() if k == "ap" else H.beta
    return HSMorphism(dom, cod, ends, M.pad(act, n1, n2))


def z_eval(t: TangleWord, H: QuasiHopfData) -> HSMorphism:
    t.check()
    m = z_generator(t.gens[0], H)
    for g in t.gens[1:]:
        m = compose(m, z_generator(g, H))
    return m


def z_closed(t: TangleWord, H: QuasiHopfData) -> FormalSum:
    """Decoration of a link (domain and target empty)."""
    m = z_eval(t, H)
    if m.dom or m.cod:
        raise TangleError("not a link: boundary is nonempty")
    return m.deco


# ---------------------------------------------------------------- LM twist formula

def twist_conjugate(H: QuasiHopfData, F: FormalSum, g: Generator) -> HSMorphism:
    """𝓕_U⁻¹ Z(T) 𝓕_D for a single generator T: D → U."""
    D, U = g.objects()
    z = z_generator(g, H)
    bottom = decorated_strands(flatten(D), f_w(H, F, D)) if flatten(D) else None
    top = decorated_strands(flatten(U), g_w(H, F, U)) if flatten(U) else None
    m = z
    if bottom is not None:
        m = compose(bottom, m)
    if top is not None:
        m = compose(m, top)
    return m


# ---------------------------------------------------------------- relation suite

def _w(*gs):
    return TangleWord(list(gs))


def relation_instances() -> list:
    """(name, lhs, rhs) pairs of tangle words that must evaluate equally.

    Identities are written as a lone associator with an empty bundle, which
    is itself an identity by (R1).
    """
    G = gen
    out = []
    # (R1) associators with an empty bundle are identities
    for k in ("ra", "la"):
        for slot in "ABC":
            kw = dict(A="u", B="u", C="d")
            kw[slot] = "e"
            g = G(k, **kw)
            d = g.objects()[0]
            out.append((f"R1 {k} {slot}=e", _w(g), ("id", d)))
    # (R2) ra and la are mutually inverse
    for abc in (dict(A="u", B="u", C="u"), dict(A="u", B="d", C="u")):
        out.append(("R2 ra.la", _w(G("ra", **abc), G("la", **abc)),
                    ("id", G("ra", **abc).objects()[0])))
        out.append(("R2 la.ra", _w(G("la", **abc), G("ra", **abc)),
                    ("id", G("la", **abc).objects()[0])))
    # (R3) pentagon on four bundles
    for D in ("u", "d"):
        lhs = _w(G("ra", A="(uu)", B="u", C=D), G("ra", A="u", B="u", C=f"(u{D})"))
        rhs = _w(G("ra", W=f"(*{D})", A="u", B="u", C="u"),
                 G("ra", A="u", B="(uu)", C=D),
                 G("ra", W="(u*)", A="u", B="u", C=D))
        out.append((f"R3 pentagon D={D}", lhs, rhs))
    # (R4) locality in space: far-apart generators commute
    out.append(("R4 ov|la",
                _w(G("ov", W="(*(u(uu)))"), G("la", W="((uu)*)")),
                _w(G("la", W="((uu)*)"), G("ov", W="(*((uu)u))"))))
    out.append(("R4 an|ov",
                _w(G("an", W="(*(uu))"), G("ov")),
                _w(G("ov", W="((ud)*)"), G("an", W="(*(uu))"))))
    out.append(("R4 cp|un",
                _w(G("cp", W="(*(uu))"), G("un", W="((du)*)")),
                _w(G("un"), G("cp", W="(*(uu))"))))
    # (R5) locality in scale: a generator inside a bundle slides through
    out.append(("R5 ov in A through ra",
                _w(G("ov", W="((*u)u)"), G("ra", A="(uu)")),
                _w(G("ra", A="(uu)"), G("ov", W="(*(uu))"))))
    out.append(("R5 un in C through la",
                _w(G("un", W="(u(u*))"), G("la", C="(uu)")),
                _w(G("la", C="(uu)"), G("un", W="((uu)*)"))))
    out.append(("R5 ap in A through la",
                _w(G("la", A="(du)"), G("ap", W="((*u)u)")),
                _w(G("ap", W="(*(uu))"), G("la", A="e"))))
    out.append(("R5 cn in A through ra",
                _w(G("cn", W="((*u)u)"), G("ra", A="(ud)")),
                _w(G("ra", A="e"), G("cn", W="(*(uu))"))))
    out.append(("R5 ov in A through ov",
                _w(G("ov", W="(*u)"), G("ov", A="(uu)")),
                _w(G("ov", A="(uu)"), G("ov", W="(u*)"))))
    out.append(("R5 un in B through ov",
                _w(G("un", W="(u*)"), G("ov", B="(uu)")),
                _w(G("ov", B="(uu)"), G("un", W="(*u)"))))
    # (R6) braidings with an empty bundle are identities
    for k in ("ov", "un"):
        for a, b in (("e", "(ud)"), ("d", "e")):
            g = G(k, A=a, B=b)
            out.append((f"R6 {k} A={a} B={b}", _w(g), ("id", g.objects()[0])))
    # (R7) ov and un are mutually inverse
    for a, b in (("u", "u"), ("d", "u"), ("u", "(ud)")):
        out.append((f"R7 ov.un A={a} B={b}", _w(G("ov", A=a, B=b), G("un", A=b, B=a)),
                    ("id", G("ov", A=a, B=b).objects()[0])))
        out.append((f"R7 un.ov A={a} B={b}", _w(G("un", A=b, B=a), G("ov", A=a, B=b)),
                    ("id", G("un", A=b, B=a).objects()[0])))
    # (R8) hexagons
    for br in ("ov", "un"):
        for C in ("u", "d"):
            lhs = _w(G(br, A="(uu)", B=C))
            rhs = _w(G("ra", A="u", B="u", C=C), G(br, W="(u*)", A="u", B=C),
                     G("la", A="u", B=C, C="u"), G(br, W="(*u)", A="u", B=C),
                     G("ra", A=C, B="u", C="u"))
            out.append((f"R8 {br} (AB),C C={C}", lhs, rhs))
            lhs = _w(G(br, A=C, B="(uu)"))
            rhs = _w(G("la", A=C, B="u", C="u"), G(br, W="(*u)", A=C, B="u"),
                     G("ra", A="u", B=C, C="u"), G(br, W="(u*)", A=C, B="u"),
                     G("la", A="u", B="u", C=C))
            out.append((f"R8 {br} A,(BC) A={C}", lhs, rhs))
    # (R9) zig-zags
    out.append(("R9 up cp.la.an", _w(G("cp", W="(u*)"), G("la", A="u", B="d", C="u"),
                                     G("an", W="(*u)")), ("id", "u")))
    out.append(("R9 up cn.ra.ap", _w(G("cn", W="(*u)"), G("ra", A="u", B="d", C="u"),
                                     G("ap", W="(u*)")), ("id", "u")))
    out.append(("R9 down cn.la.ap", _w(G("cn", W="(d*)"), G("la", A="d", B="u", C="d"),
                                       G("ap", W="(*d)")), ("id", "d")))
    out.append(("R9 down cp.ra.an", _w(G("cp", W="(*d)"), G("ra", A="d", B="u", C="d"),
                                       G("an", W="(d*)")), ("id", "d")))
    return out


def _evaluate_side(side, H):
    if isinstance(side, tuple) and side[0] == "id":
        return identity_morphism(flatten(side[1]), H)
    return z_eval(side, H)


def r10_residual(H: QuasiHopfData) -> FormalSum:
    """LHS − α of the double-loop identity

    S(X̄_j)S(s_k)S(α)uv⁻¹t_kȲ_jX_iβS(Y_i)S(Z̄'_j)S(t̄_l)S(α)uv⁻¹s̄_lZ̄''_jZ_i = α.
    """
    cap = H.cap
    pinv = H.cop(H.phi_inv, 2)            # X̄, Ȳ, Z̄', Z̄''
    K = H.z_cn()
    els = [pinv, H.R, K, H.phi, H.beta, H.R_inv, K]
    word = [(0, 0, True), (1, 0, True), (2, 0, False), (1, 1, False), (0, 1, False),
            (3, 0, False), (4, 0, False), (3, 1, True), (0, 2, True), (5, 1, True),
            (6, 0, False), (5, 0, False), (0, 3, False), (3, 2, False)]
    return chain(els, word, cap) - H.alpha


def relation_suite(H: QuasiHopfData, names=None) -> list:
    """[(name, passed)] for (R1)-(R10)."""
    rows = []
    for name, lhs, rhs in relation_instances():
        if names and not any(name.startswith(n) for n in names):
            continue
        a = _evaluate_side(lhs, H)
        b = _evaluate_side(rhs, H)
        rows.append((name, morphisms_equal(a, b, H)))
    if not names or any("R10".startswith(n) or n.startswith("R10") for n in names):
        rows.append(("R10 double loop identity", H.space(("I",)).is_zero(r10_residual(H))))
    return rows


# ---------------------------------------------------------------- axiom checks

def axiom_report(H: QuasiHopfData) -> dict:
    """Quasi-Hopf axioms that do not involve tangles, mod the cap."""
    cap = H.cap
    phi, R, pinv = H.phi, H.R, H.phi_inv
    eq = H.equal
    out = {}
    lhs = M.product(H.cop(phi, 2), H.cop(phi, 0))
    rhs = M.prod(M.pad(phi, 1, 0), H.cop(phi, 1), M.pad(phi, 0, 1))
    out["pentagon"] = eq(lhs, rhs)
    X = lambda v, s: M.relabel(v, s, 3)
    h1 = M.prod(X(pinv, (2, 3, 1)), X(R, (1, 3)), X(phi, (2, 1, 3)), X(R, (1, 2)), pinv)
    out["hexagon1"] = eq(H.cop(R, 1), h1)
    h2 = M.prod(X(phi, (3, 1, 2)), X(R, (1, 3)), X(pinv, (1, 3, 2)), X(R, (2, 3)), phi)
    out["hexagon2"] = eq(H.cop(R, 0), h2)
    # X β S(Y) α Z = 1 and S(X̄) α Ȳ β S(Z̄) = 1
    a1 = chain([phi, H.beta, H.alpha], [(0, 0, False), (1, 0, False), (0, 1, True),
                                        (2, 0, False), (0, 2, False)], cap)
    out["antipode_phi"] = eq(a1, H.one(1))
    a2 = chain([pinv, H.alpha, H.beta], [(0, 0, True), (1, 0, False), (0, 1, False),
                                         (2, 0, False), (0, 2, True)], cap)
    out["antipode_phi_inv"] = eq(a2, H.one(1))
    v, u = H.v, H.u
    out["v_squared"] = eq(M.product(v, v), M.product(u, M.antipode(u)))
    r21r = M.product(M.permute(R, (2, 1)), R)
    out["delta_v"] = eq(H.cop(v, 0), M.product(M.tensor(v, v, cap=cap), M.inverse(r21r, cap)))
    for i in range(3):
        out[f"counit_phi_{i + 1}"] = eq(M.counit(phi, i), H.one(2))
    return out


def unknot_closed_form(H: QuasiHopfData) -> FormalSum:
    """Tr(u⁻¹ v S(β) α)."""
    return M.trace(M.prod(H.u_inv, H.v, M.antipode(H.beta), H.alpha))
