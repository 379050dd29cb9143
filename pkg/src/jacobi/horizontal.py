"""Horizontal chord diagrams and a rational associator solver.

A^h_n is generated by t^{ij} = t^{ji} (1 ≤ i < j ≤ n) modulo
[t^{ij}, t^{kl}] = 0 for disjoint pairs and [t^{jk}, t^{ij} + t^{ik}] = 0.
Elements are kept as raw word sums; the quotient is only formed when
comparing or solving.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .rat import Inconsistent, RowEchelonBasis, axpy, rank, solve_affine


def gen(i: int, j: int) -> tuple:
    if i == j:
        raise ValueError("t^{ii} is not a generator")
    return (i, j) if i < j else (j, i)


def generators(n: int) -> list:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class HorElement:
    """Σ c_w w over words w in the generators t^{ij}, truncated at cap."""

    __slots__ = ("n", "terms", "cap")

    def __init__(self, n: int, terms=None, cap=None):
        self.n = n
        self.terms = {} if terms is None else terms
        self.cap = cap

    @classmethod
    def one(cls, n, cap=None):
        return cls(n, {(): Fraction(1)}, cap)

    @classmethod
    def t(cls, i, j, n, cap=None):
        return cls(n, {(gen(i, j),): Fraction(1)}, cap)

    def copy(self):
        return HorElement(self.n, dict(self.terms), self.cap)

    def _cap2(self, o):
        caps = [c for c in (self.cap, o.cap) if c is not None]
        return min(caps) if caps else None

    def _trunc(self):
        if self.cap is not None:
            for w in [w for w in self.terms if len(w) > self.cap]:
                del self.terms[w]
        return self

    def __add__(self, o):
        if not isinstance(o, HorElement):
            o = HorElement.one(self.n, self.cap) * o
        if o.n != self.n:
            raise ValueError("strand count mismatch")
        t = dict(self.terms)
        axpy(t, 1, o.terms)
        return HorElement(self.n, t, self._cap2(o))._trunc()

    __radd__ = __add__

    def __neg__(self):
        return HorElement(self.n, {w: -c for w, c in self.terms.items()}, self.cap)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, HorElement):
            if o.n != self.n:
                raise ValueError("strand count mismatch")
            cap = self._cap2(o)
            out = {}
            for w1, a in self.terms.items():
                for w2, b in o.terms.items():
                    if cap is not None and len(w1) + len(w2) > cap:
                        continue
                    w = w1 + w2
                    v = out.get(w, 0) + a * b
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            return HorElement(self.n, out, cap)
        o = Fraction(o)
        if not o:
            return HorElement(self.n, {}, self.cap)
        return HorElement(self.n, {w: c * o for w, c in self.terms.items()}, self.cap)

    def __rmul__(self, o):
        return self * o

    def __truediv__(self, o):
        return self * (Fraction(1) / o)

    def __eq__(self, o):
        return isinstance(o, HorElement) and self.n == o.n and self.terms == o.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def with_cap(self, cap):
        return HorElement(self.n, dict(self.terms), cap)._trunc()

    def degree_part(self, d: int) -> "HorElement":
        return HorElement(self.n, {w: c for w, c in self.terms.items() if len(w) == d}, self.cap)

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{word_str(w)}" for w, c in sorted(self.terms.items(), key=_wkey))


def _wkey(item):
    return (len(item[0]), item[0])


def word_str(w) -> str:
    if not w:
        return "1"
    return ".".join(f"t{i}{j}" for i, j in w)


# ---------------------------------------------------------------- strand maps

def _map_words(x: HorElement, f, n_out: int) -> HorElement:
    """Linear extension of a letter map f: generator -> list of (generator, coeff)."""
    out: dict = {}
    for w, c in x.terms.items():
        choices = [f(g) for g in w]
        for pick in itertools.product(*choices):
            coeff = c
            for _, a in pick:
                coeff *= a
            if not coeff:
                continue
            nw = tuple(g for g, _ in pick)
            v = out.get(nw, 0) + coeff
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
    return HorElement(n_out, out, x.cap)


def relabel(x: HorElement, slots, n: int) -> HorElement:
    """X^{slots}: strand i of x goes to strand slots[i-1] of n."""
    slots = tuple(slots)
    if len(slots) != x.n or len(set(slots)) != len(slots):
        raise ValueError(f"bad slot map {slots}")
    return _map_words(x, lambda g: [(gen(slots[g[0] - 1], slots[g[1] - 1]), 1)], n)


def cable(x: HorElement, i: int) -> HorElement:
    """Δ_i: strand i is doubled into strands i, i+1."""
    def sh(a):
        return a if a < i else a + 1

    def f(g):
        a, b = g
        if a == i:
            return [(gen(i, sh(b)), 1), (gen(i + 1, sh(b)), 1)]
        if b == i:
            return [(gen(sh(a), i), 1), (gen(sh(a), i + 1), 1)]
        return [(gen(sh(a), sh(b)), 1)]
    return _map_words(x, f, x.n + 1)


def counit(x: HorElement, i: int) -> HorElement:
    """ε_i: strand i is removed; words with a chord on it die."""
    def sh(a):
        return a if a < i else a - 1

    def f(g):
        if i in g:
            return []
        return [(gen(sh(g[0]), sh(g[1])), 1)]
    return _map_words(x, f, x.n - 1)


# ---------------------------------------------------------------- power series

def _series(y: HorElement, coeff, cap) -> HorElement:
    out = HorElement.one(y.n, cap) * coeff(0)
    p = HorElement.one(y.n, cap)
    y = y.with_cap(cap)
    for k in range(1, cap + 1):
        p = p * y
        if not p:
            break
        c = coeff(k)
        if c:
            out = out + p * c
    return out


def _split(x: HorElement, cap):
    cap = x.cap if cap is None else cap
    if cap is None:
        raise ValueError("power series need a degree cap")
    c0 = x.constant()
    y = x.with_cap(cap) - HorElement.one(x.n, cap) * c0
    return c0, y, cap


def exp(x: HorElement, cap=None) -> HorElement:
    c0, y, cap = _split(x, cap)
    if c0:
        raise ValueError("exp needs an argument without constant term")
    return _series(y, lambda k: Fraction(1, math.factorial(k)), cap)


def log(x: HorElement, cap=None) -> HorElement:
    c0, y, cap = _split(x, cap)
    if c0 != 1:
        raise ValueError("log needs a perturbation of the identity")
    return _series(y, lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), k), cap)


def inverse(x: HorElement, cap=None) -> HorElement:
    c0, y, cap = _split(x, cap)
    if c0 != 1:
        raise ValueError("inverse needs a perturbation of the identity")
    return _series(y, lambda k: Fraction((-1) ** k), cap)


def commutator(a: HorElement, b: HorElement) -> HorElement:
    return a * b - b * a


# ---------------------------------------------------------------- quotient

def relation_generators(n: int) -> list:
    """Degree-2 relators as word dicts."""
    rels = []
    gs = generators(n)
    for g, h in itertools.combinations(gs, 2):
        if not set(g) & set(h):
            rels.append({(g, h): Fraction(1), (h, g): Fraction(-1)})
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        if j > k:
            continue
        a = gen(j, k)
        r: dict = {}
        for b in (gen(i, j), gen(i, k)):
            axpy(r, 1, {(a, b): Fraction(1), (b, a): Fraction(-1)})
        rels.append(r)
    return rels


@dataclass
class _HorLevel:
    words: list
    echelon: RowEchelonBasis
    basis: list


_levels: dict = {}


def hor_level(n: int, d: int) -> _HorLevel:
    """Words of length d modulo the two-sided ideal, by elimination."""
    key = (n, d)
    lv = _levels.get(key)
    if lv is not None:
        return lv
    gs = generators(n)
    words = [tuple(w) for w in itertools.product(gs, repeat=d)]
    order = {w: k for k, w in enumerate(words)}
    ech = RowEchelonBasis(order=order)
    if d >= 2:
        rels = relation_generators(n)
        for p in range(d - 1):
            for left in itertools.product(gs, repeat=p):
                for right in itertools.product(gs, repeat=d - 2 - p):
                    for r in rels:
                        ech.insert({tuple(left) + w + tuple(right): c for w, c in r.items()})
    basis = [w for w in words if w not in ech.rows]
    # prefer late words as pivots: the basis is the set of non-pivot words
    lv = _HorLevel(words, ech, basis)
    _levels[key] = lv
    return lv


def reduce_hor(x: HorElement) -> dict:
    """Coordinates {word: coeff} over the quotient basis, all degrees."""
    out = {}
    by_deg: dict = {}
    for w, c in x.terms.items():
        by_deg.setdefault(len(w), {})[w] = c
    for d, part in sorted(by_deg.items()):
        out.update(hor_level(x.n, d).echelon.reduce(part))
    return out


def hor_dim(n: int, d: int) -> int:
    return len(hor_level(n, d).basis)


def is_zero(x: HorElement) -> bool:
    return not reduce_hor(x)


def hor_equal(a: HorElement, b: HorElement) -> bool:
    return is_zero(a - b)


# ---------------------------------------------------------------- equations

def r_kz(cap: int) -> HorElement:
    """R = e^{t^{12}/2}."""
    return exp(HorElement.t(1, 2, 2, cap) * Fraction(1, 2), cap)


def pentagon_residual(phi: HorElement) -> HorElement:
    """Δ_3(Φ)Δ_1(Φ) − Φ^{234}Δ_2(Φ)Φ^{123} on 4 strands."""
    lhs = cable(phi, 3) * cable(phi, 1)
    rhs = relabel(phi, (2, 3, 4), 4) * cable(phi, 2) * relabel(phi, (1, 2, 3), 4)
    return lhs - rhs


def _x(v, slots):
    return relabel(v, slots, 3)


def hexagon_residuals(phi: HorElement, R: HorElement):
    """The two hexagon equations as differences on 3 strands."""
    cap = phi.cap
    inv = inverse(phi, cap)
    h1 = cable(R, 2) - (_x(inv, (2, 3, 1)) * _x(R, (1, 3)) * _x(phi, (2, 1, 3))
                        * _x(R, (1, 2)) * inv)
    h2 = cable(R, 1) - (_x(phi, (3, 1, 2)) * _x(R, (1, 3)) * _x(inv, (1, 3, 2))
                        * _x(R, (2, 3)) * phi)
    return h1, h2


def qqybe_residual(phi: HorElement, R: HorElement) -> HorElement:
    """R¹²Φ³¹²R¹³(Φ¹³²)⁻¹R²³Φ¹²³ − Φ³²¹R²³(Φ²³¹)⁻¹R¹³Φ²¹³R¹²."""
    inv = inverse(phi, phi.cap)
    lhs = (_x(R, (1, 2)) * _x(phi, (3, 1, 2)) * _x(R, (1, 3)) * _x(inv, (1, 3, 2))
           * _x(R, (2, 3)) * phi)
    rhs = (_x(phi, (3, 2, 1)) * _x(R, (2, 3)) * _x(inv, (2, 3, 1)) * _x(R, (1, 3))
           * _x(phi, (2, 1, 3)) * _x(R, (1, 2)))
    return lhs - rhs


# ---------------------------------------------------------------- solver

@dataclass
class Associator:
    """Φ on 3 strands with its homogeneous parts."""

    phi: HorElement
    cap: int
    free_zeroed: dict = field(default_factory=dict)

    def part(self, d: int) -> HorElement:
        return self.phi.degree_part(d)

    @property
    def parts(self) -> list:
        return [self.part(d) for d in range(self.cap + 1)]


@dataclass
class SolverConfig:
    cap: int = 4
    even: bool = True
    guard: int = 6


def lie_basis(n: int, d: int) -> list:
    """Independent right-normed brackets [g1, [g2, ..., gd]] of degree d."""
    gs = generators(n)
    ech = RowEchelonBasis(order={w: k for k, w in enumerate(hor_level(n, d).words)})
    out = []
    for word in itertools.product(gs, repeat=d):
        x = HorElement(n, {(word[-1],): Fraction(1)}, d)
        for g in reversed(word[:-1]):
            x = commutator(HorElement(n, {(g,): Fraction(1)}, d), x)
        if ech.insert(reduce_hor(x)):
            out.append(x)
    return out


def _linear_rows(unknowns, lin_maps):
    """Coordinates of each linear map applied to each unknown."""
    return [[reduce_hor(f(e)) for f in lin_maps] for e in unknowns]


def solve_associator(cap: int = 4, config: SolverConfig = None) -> Associator:
    """Degree-by-degree rational group-like solution of pentagon and both hexagons.

    Φ = exp(ψ) with ψ a Lie series.  At degree d the new Lie part ψ_d enters
    every residual linearly, through
    ψ_d ↦ Δ_3ψ_d + Δ_1ψ_d − ψ_d^{234} − Δ_2ψ_d − ψ_d^{123} and
    ψ_d ↦ ψ_d^{231} − ψ_d^{213} + ψ_d, ψ_d ↦ −ψ_d^{312} + ψ_d^{132} − ψ_d.
    Odd degrees are set to zero and checked; remaining freedom is zeroed
    after requiring Φ⁻¹ = Φ^{321} and ε_i(Φ) = 1.
    """
    config = config or SolverConfig(cap=cap)
    if cap > config.guard:
        raise ValueError(f"cap {cap} above solver guard {config.guard}")
    psi = HorElement(3, {}, cap)
    zeroed = {}
    lin = [
        lambda e: cable(e, 3) + cable(e, 1) - relabel(e, (2, 3, 4), 4) - cable(e, 2)
        - relabel(e, (1, 2, 3), 4),
        lambda e: _x(e, (2, 3, 1)) - _x(e, (2, 1, 3)) + e,
        lambda e: -_x(e, (3, 1, 2)) + _x(e, (1, 3, 2)) - e,
        # Φ⁻¹ = Φ^{321}: −ψ_d − ψ_d^{321} = known
        lambda e: -e - _x(e, (3, 2, 1)),
        lambda e: counit(e, 1),
        lambda e: counit(e, 2),
        lambda e: counit(e, 3),
    ]
    for d in range(2, cap + 1):
        trial = exp(psi.with_cap(d), d)
        known = [pentagon_residual(trial).degree_part(d)]
        known += [h.degree_part(d) for h in hexagon_residuals(trial, r_kz(d))]
        known.append((inverse(trial, d) - _x(trial, (3, 2, 1))).degree_part(d))
        known += [counit(trial, i).degree_part(d) for i in (1, 2, 3)]
        unknowns = [] if (config.even and d % 2) else lie_basis(3, d)
        # rows indexed by (equation, coordinate); columns by unknown index
        rows: dict = {}
        for k, imgs in enumerate(_linear_rows(unknowns, lin)):
            for q, coords in enumerate(imgs):
                for w, c in coords.items():
                    rows.setdefault((q, w), {})[k] = c
        rhs_all = {}
        for q, kn in enumerate(known):
            for w, c in reduce_hor(kn).items():
                rhs_all[(q, w)] = -c
                rows.setdefault((q, w), {})
        keys = sorted(rows, key=lambda t: (t[0], len(t[1]), t[1]))
        A = [rows[k] for k in keys]
        b = {i: rhs_all[k] for i, k in enumerate(keys) if k in rhs_all}
        try:
            x = solve_affine(A, b)
        except Inconsistent as e:
            raise Inconsistent(f"associator equations inconsistent at degree {d}: {e}") from None
        part = HorElement(3, {}, cap)
        for k, c in x.items():
            part = part + unknowns[k].with_cap(cap) * c
        zeroed[d] = len(unknowns) - rank([r for r in A if r])
        psi = psi + part
    return Associator(exp(psi, cap), cap, zeroed)


def verify_associator(assoc: Associator, R: HorElement = None) -> dict:
    """Named residual checks; True means zero through the cap."""
    phi = assoc.phi
    R = R or r_kz(assoc.cap)
    h1, h2 = hexagon_residuals(phi, R)
    inv = inverse(phi, assoc.cap)
    out = {
        "pentagon": is_zero(pentagon_residual(phi)),
        "hexagon1": is_zero(h1),
        "hexagon2": is_zero(h2),
        "qqybe": is_zero(qqybe_residual(phi, R)),
        "inverse_symmetry": hor_equal(inv, _x(phi, (3, 2, 1))),
    }
    for i in (1, 2, 3):
        out[f"counit{i}"] = hor_equal(counit(phi, i), HorElement.one(2, assoc.cap))
    out["degree1_zero"] = not phi.degree_part(1)
    return out


# ---------------------------------------------------------------- embedding

def embed_hor(x: HorElement):
    """Words become chord diagrams on ↑ⁿ, stacked bottom to top in word order."""
    from . import diagram as dg
    from .spaces import FormalSum
    skel = ("I",) * x.n
    out = FormalSum(skel, {}, x.cap)
    for w, c in x.terms.items():
        legs = []
        mate = []
        for h, (i, j) in enumerate(w):
            legs += [(i - 1, h), (j - 1, h)]
            mate += [2 * h + 1, 2 * h]
        legs = dg.normalize_positions(skel, legs)
        out.add(dg.Diagram(skel, legs, tuple(mate), None), c)
    return out


# ---------------------------------------------------------------- text format

def format_table(x: HorElement) -> str:
    lines = []
    for w, c in sorted(x.terms.items(), key=_wkey):
        lines.append(f"{len(w)}\t{word_str(w)}\t{c}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_table(text: str, n: int = 3, cap=None) -> HorElement:
    terms = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            _, ws, cs = line.split("\t")
            w = () if ws == "1" else tuple(gen(int(t[1]), int(t[2])) for t in ws.split("."))
            terms[w] = Fraction(cs)
        except (ValueError, IndexError) as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return HorElement(n, terms, cap)
