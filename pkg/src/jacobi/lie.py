"""Evaluation of Jacobi diagrams in enveloping algebras.

Undirected diagrams go to U(g)^{⊗n} for a metrized Lie algebra g; directed
diagrams go to U(g)^{⊗n} for a Manin triple (g, g₊, g₋), with heads carrying
elements of g₊ and tails elements of g₋.  All arithmetic is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import diagram as dg
from .rat import Q


class LieAlgebraError(ValueError):
    pass


def _matinv(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise LieAlgebraError("singular metric")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k) if a[i][t]), Fraction(0))
             for j in range(m)] for i in range(n)]


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True, eq=False)
class MetrizedLieAlgebra:
    """Lie algebra with an invariant nondegenerate symmetric form.

    ``bracket[(i, j)]`` is a dict k -> c with [e_i, e_j] = Σ c e_k; only
    nonzero brackets need be present.  ``reps`` maps a name to a list of
    square matrices, one per basis element.
    """

    names: tuple
    bracket: dict
    metric: tuple
    reps: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.dim
        br = {}
        for (i, j), row in self.bracket.items():
            row = {k: Q(c) for k, c in row.items() if Q(c)}
            if row:
                br[(i, j)] = row
        object.__setattr__(self, "bracket", br)
        met = tuple(tuple(Q(x) for x in row) for row in self.metric)
        if len(met) != n or any(len(r) != n for r in met):
            raise LieAlgebraError("metric has wrong shape")
        object.__setattr__(self, "metric", met)
        object.__setattr__(self, "tinv", _matinv(met))
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    def br(self, i, j) -> dict:
        return self.bracket.get((i, j), {})

    def br_vec(self, x: dict, y: dict) -> dict:
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.br(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def form(self, x: dict, y: dict) -> Fraction:
        return sum((a * b * self.metric[i][j] for i, a in x.items() for j, b in y.items()),
                   Fraction(0))

    def structure(self, a, b, c) -> Fraction:
        """([e_a, e_b], e_c), totally antisymmetric."""
        return self._f[(a, b, c)] if (a, b, c) in self._f else Fraction(0)

    def _validate(self):
        n = self.dim
        e = [{i: Fraction(1)} for i in range(n)]
        for i in range(n):
            for j in range(n):
                if self.metric[i][j] != self.metric[j][i]:
                    raise LieAlgebraError(f"metric not symmetric at ({i}, {j})")
                a, b = self.br(i, j), self.br(j, i)
                if any(a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)):
                    raise LieAlgebraError(f"bracket not antisymmetric at ({i}, {j})")
        for i, j, k in itertools.combinations(range(n), 3):
            s = {}
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                for t, c in self.br_vec(e[x], self.br(y, z)).items():
                    s[t] = s.get(t, 0) + c
            if any(s.values()):
                raise LieAlgebraError(f"Jacobi identity fails at ({i}, {j}, {k})")
        f = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    v = self.form(self.br(i, j), e[k]) + self.form(e[j], self.br(i, k))
                    if v:
                        raise LieAlgebraError(f"metric not invariant at ({i}, {j}, {k})")
                    w = self.form(self.br(i, j), e[k])
                    if w:
                        f[(i, j, k)] = w
        object.__setattr__(self, "_f", f)
        for name, mats in self.reps.items():
            check_rep(self, mats, name)

    def index(self, tok) -> int:
        if isinstance(tok, int):
            return tok
        if tok in self.names:
            return self.names.index(tok)
        return int(tok)


def check_rep(g: MetrizedLieAlgebra, mats, name="rep"):
    if len(mats) != g.dim:
        raise LieAlgebraError(f"{name}: need {g.dim} matrices")
    d = len(mats[0])
    for i, j in itertools.combinations(range(g.dim), 2):
        a = _matmul(mats[i], mats[j])
        b = _matmul(mats[j], mats[i])
        want = [[Fraction(0)] * d for _ in range(d)]
        for k, c in g.br(i, j).items():
            for r in range(d):
                for s in range(d):
                    want[r][s] += c * mats[k][r][s]
        if any(a[r][s] - b[r][s] != want[r][s] for r in range(d) for s in range(d)):
            raise LieAlgebraError(f"{name} violates the bracket of ({i}, {j})")


# ---------------------------------------------------------------- file format

def parse_lie(text: str):
    """Parse the line format: ``dim n``, ``names ...``, ``bracket i j -> k c``,
    ``metric i j c``, ``cobracket i -> j k c`` and ``rep name i row col c``.

    Indices are 0-based integers or basis names.  A file with cobracket lines
    describes a Lie bialgebra and yields the Manin triple of its double;
    otherwise the result is a MetrizedLieAlgebra.
    """
    n = None
    names = None
    br, met, cob, reps = {}, {}, {}, {}
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    for t in lines:
        if t[0] == "dim":
            n = int(t[1])
        elif t[0] == "names":
            names = tuple(t[1:])
    if n is None:
        raise LieAlgebraError("missing dim line")
    names = names or tuple(f"x{i}" for i in range(n))
    if len(names) != n:
        raise LieAlgebraError("names do not match dim")

    def ix(tok):
        return names.index(tok) if tok in names else int(tok)

    for t in lines:
        try:
            if t[0] in ("dim", "names"):
                continue
            if t[0] == "bracket":
                br[(ix(t[1]), ix(t[2]), ix(t[4]))] = Q(t[5])
            elif t[0] == "metric":
                i, j, c = ix(t[1]), ix(t[2]), Q(t[3])
                met[(i, j)] = met[(j, i)] = c
            elif t[0] == "cobracket":
                cob[(ix(t[1]), ix(t[3]), ix(t[4]))] = Q(t[5])
            elif t[0] == "rep":
                reps.setdefault(t[1], []).append((ix(t[2]), int(t[3]), int(t[4]), Q(t[5])))
            else:
                raise LieAlgebraError(f"unknown directive {t[0]!r}")
        except (IndexError, ValueError) as exc:
            raise LieAlgebraError(f"bad line {' '.join(t)!r}: {exc}") from None
    brd = _antisym(br, lambda i, j, k: (j, i, k), "bracket")
    cobd = _antisym(cob, lambda i, j, k: (i, k, j), "cobracket")
    rmats = {}
    for name, entries in reps.items():
        d = 1 + max(max(r, c) for _, r, c, _ in entries)
        mats = [[[Fraction(0)] * d for _ in range(d)] for _ in range(n)]
        for i, r, c, v in entries:
            mats[i][r][c] = v
        rmats[name] = mats
    if cob:
        return build_double(LieBialgebra(names, _nest(brd), _nest_first(cobd)))
    br = _nest(brd)
    metric = tuple(tuple(met.get((i, j), Fraction(0)) for j in range(n)) for i in range(n))
    return MetrizedLieAlgebra(names, br, metric, rmats)


def _antisym(entries, swap, what):
    out = dict(entries)
    for key, c in entries.items():
        other = swap(*key)
        if other in entries and entries[other] != -c:
            raise LieAlgebraError(f"{what} entries {key} and {other} are not antisymmetric")
        out[other] = -c
    return out


def _nest(entries):
    out = {}
    for (i, j, k), c in entries.items():
        if c:
            out.setdefault((i, j), {})[k] = c
    return out


def _nest_first(entries):
    out = {}
    for (i, j, k), c in entries.items():
        if c:
            out.setdefault(i, {})[(j, k)] = c
    return out


def load_lie(path):
    return parse_lie(Path(path).read_text())


# ---------------------------------------------------------------- bialgebras and doubles

@dataclass(frozen=True, eq=False)
class LieBialgebra:
    """Bracket plus cobracket; ``cobracket[i]`` maps (j, k) -> c with
    δ(e_i) = Σ c e_j ⊗ e_k."""

    names: tuple
    bracket: dict
    cobracket: dict

    def __post_init__(self):
        n = len(self.names)
        br = {k: {a: Q(b) for a, b in v.items()} for k, v in self.bracket.items()}
        cob = {i: {a: Q(b) for a, b in v.items() if Q(b)} for i, v in self.cobracket.items()}
        object.__setattr__(self, "bracket", br)
        object.__setattr__(self, "cobracket", cob)
        for i in range(n):
            d = cob.get(i, {})
            for (j, k), c in d.items():
                if d.get((k, j), 0) != -c:
                    raise LieAlgebraError(f"cobracket of {i} is not antisymmetric")
        for i in range(n):
            for j in range(n):
                lhs = self._delta_vec(self.bracket.get((i, j), {}))
                rhs = self._act(i, self._delta_vec({j: Fraction(1)}))
                for k, c in self._act(j, self._delta_vec({i: Fraction(1)})).items():
                    rhs[k] = rhs.get(k, 0) - c
                diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
                if any(diff.values()):
                    raise LieAlgebraError(f"cocycle identity fails at ({i}, {j})")

    def _delta_vec(self, x: dict) -> dict:
        out = {}
        for i, a in x.items():
            for jk, c in self.cobracket.get(i, {}).items():
                out[jk] = out.get(jk, 0) + a * c
        return out

    def _act(self, i, t: dict) -> dict:
        out = {}
        for (j, k), c in t.items():
            for m, b in self.bracket.get((i, j), {}).items():
                out[(m, k)] = out.get((m, k), 0) + c * b
            for m, b in self.bracket.get((i, k), {}).items():
                out[(j, m)] = out.get((j, m), 0) + c * b
        return out


@dataclass(frozen=True, eq=False)
class ManinTriple:
    """Metrized Lie algebra with complementary isotropic subalgebras
    spanned by the basis vectors in ``plus`` and ``minus``."""

    g: MetrizedLieAlgebra
    plus: tuple
    minus: tuple
    projection: dict | None = None
    target: MetrizedLieAlgebra | None = None

    def __post_init__(self):
        n = self.g.dim
        if sorted(self.plus + self.minus) != list(range(n)):
            raise LieAlgebraError("halves are not complementary")
        for half in (self.plus, self.minus):
            s = set(half)
            for i in half:
                for j in half:
                    if self.g.metric[i][j]:
                        raise LieAlgebraError("half is not isotropic")
                    if any(k not in s for k in self.g.br(i, j)):
                        raise LieAlgebraError("half is not a subalgebra")
        _matinv([[self.g.metric[i][j] for j in self.minus] for i in self.plus])

    def project(self, t: "UEnvTensor") -> "UEnvTensor":
        if self.projection is None:
            raise LieAlgebraError("no projection stored")
        return t.map_basis(self.target, self.projection)


def build_double(a: LieBialgebra) -> ManinTriple:
    """The double a ⊕ a* with (x + ξ, y + η) = ξ(y) + η(x).

    Basis: e_0..e_{n-1} then the dual basis e^0..e^{n-1}.
    """
    n = len(a.names)
    names = tuple(a.names) + tuple(x + "*" for x in a.names)
    br = {}

    def put(i, j, k, c):
        if c:
            br.setdefault((i, j), {})
            br[(i, j)][k] = br[(i, j)].get(k, 0) + c

    for (i, j), row in a.bracket.items():
        for k, c in row.items():
            put(i, j, k, c)
    for k, d in a.cobracket.items():
        for (i, j), c in d.items():
            put(n + i, n + j, n + k, c)
    for i in range(n):
        for j in range(n):
            # invariance of the form fixes the mixed bracket
            for k in range(n):
                c = -a.bracket.get((i, k), {}).get(j, 0)
                put(i, n + j, n + k, c)
                put(n + j, i, n + k, -c)
                c = a.cobracket.get(i, {}).get((j, k), 0)
                put(i, n + j, k, c)
                put(n + j, i, k, -c)
    metric = tuple(tuple(Fraction(int(abs(i - j) == n)) for j in range(2 * n))
                   for i in range(2 * n))
    g = MetrizedLieAlgebra(names, br, metric)
    return ManinTriple(g, tuple(range(n)), tuple(range(n, 2 * n)))



# ---------------------------------------------------------------- U(g) tensors

def _pbw(g: MetrizedLieAlgebra, word: tuple) -> dict:
    """Normal-ordered form of a word in U(g) as {ascending monomial: coeff}."""
    memo = g.__dict__.setdefault("_pbw_memo", {})
    hit = memo.get(word)
    if hit is not None:
        return hit
    i = next((k for k in range(len(word) - 1) if word[k] > word[k + 1]), None)
    if i is None:
        out = {word: Fraction(1)}
    else:
        x, y = word[i], word[i + 1]
        out = dict(_pbw(g, word[:i] + (y, x) + word[i + 2:]))
        for k, c in g.br(x, y).items():
            for m, b in _pbw(g, word[:i] + (k,) + word[i + 2:]).items():
                out[m] = out.get(m, 0) + c * b
        out = {m: c for m, c in out.items() if c}
    memo[word] = out
    return out


class UEnvTensor:
    """Element of ⊕_d ħ^d U(g)^{⊗n}; keys are (degree, monomials).

    Components listed as colors hold symmetric-algebra monomials and are
    never straightened.
    """

    __slots__ = ("g", "skel", "terms")

    def __init__(self, g, skel, terms=None):
        self.g = g
        self.skel = tuple(skel)
        self.terms = {} if terms is None else terms

    @classmethod
    def one(cls, g, skel):
        skel = tuple(skel)
        return cls(g, skel, {(0, ((),) * len(skel)): Fraction(1)})

    def _add_term(self, key, c):
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def _check(self, other):
        if other.g is not self.g or other.skel != self.skel:
            raise LieAlgebraError("tensors live in different spaces")

    def __add__(self, other):
        self._check(other)
        out = UEnvTensor(self.g, self.skel, dict(self.terms))
        for k, c in other.terms.items():
            out._add_term(k, c)
        return out

    def __neg__(self):
        return UEnvTensor(self.g, self.skel, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UEnvTensor):
            return self.product(other)
        c = Q(other)
        if not c:
            return UEnvTensor(self.g, self.skel)
        return UEnvTensor(self.g, self.skel, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, UEnvTensor):
            return NotImplemented
        return self.g is other.g and self.skel == other.skel and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def _normal(self, comp, word):
        if dg.is_color(self.skel[comp]):
            return {tuple(sorted(word)): Fraction(1)}
        return _pbw(self.g, tuple(word))

    def _expand(self, words):
        """Normal-order each component's word and expand the tensor product."""
        acc = {(): Fraction(1)}
        for comp, w in enumerate(words):
            nf = self._normal(comp, w)
            acc = {k + (m,): a * b for k, a in acc.items() for m, b in nf.items()}
        return acc

    def product(self, other, cap=None):
        self._check(other)
        out = UEnvTensor(self.g, self.skel)
        for (d1, m1), a in self.terms.items():
            for (d2, m2), b in other.terms.items():
                if cap is not None and d1 + d2 > cap:
                    continue
                for ms, c in self._expand([x + y for x, y in zip(m1, m2)]).items():
                    out._add_term((d1 + d2, ms), a * b * c)
        return out

    def degree_part(self, d):
        return UEnvTensor(self.g, self.skel,
                          {k: c for k, c in self.terms.items() if k[0] == d})

    def truncate(self, cap):
        return UEnvTensor(self.g, self.skel,
                          {k: c for k, c in self.terms.items() if k[0] <= cap})

    def exp(self, cap):
        """exp of an element without constant term, through ħ^cap."""
        if any(k[0] == 0 for k in self.terms):
            raise LieAlgebraError("exp needs an element of positive degree")
        out = UEnvTensor.one(self.g, self.skel)
        power = out
        for k in range(1, cap + 1):
            power = power.product(self, cap) * Fraction(1, k)
            out = out + power
        return out

    def map_basis(self, target, images):
        """Apply a Lie algebra map given on basis vectors (index -> {index: c})."""
        out = UEnvTensor(target, self.skel)
        for (d, ms), c in self.terms.items():
            words = [{(): Fraction(1)}]
            for m in ms:
                acc = {(): Fraction(1)}
                for x in m:
                    acc = {w + (y,): a * b for w, a in acc.items()
                           for y, b in images[x].items()}
                words.append(acc)
            combos = {(): c}
            for acc in words[1:]:
                combos = {k + (w,): a * b for k, a in combos.items() for w, b in acc.items()}
            for ws, a in combos.items():
                for nms, b in out._expand(ws).items():
                    out._add_term((d, nms), a * b)
        return out

    def coproduct(self, comp):
        """Δ on one component, producing two adjacent components."""
        skel = self.skel[:comp] + (self.skel[comp],) * 2 + self.skel[comp + 1:]
        out = UEnvTensor(self.g, skel)
        for (d, ms), c in self.terms.items():
            m = ms[comp]
            for bits in itertools.product((0, 1), repeat=len(m)):
                a = tuple(x for x, b in zip(m, bits) if not b)
                b_ = tuple(x for x, b in zip(m, bits) if b)
                out._add_term((d, ms[:comp] + (a, b_) + ms[comp + 1:]), c)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.g.names
        parts = []
        for (d, ms), c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            mono = "⊗".join("·".join(names[i] for i in m) or "1" for m in ms)
            parts.append(f"{c} ħ^{d} {mono}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------- evaluation

def _labelings(d: dg.Diagram, g: MetrizedLieAlgebra, plus=None):
    """Yield (weight, labels) for every labelling of half-edges by basis indices.

    Each edge carries the inverse metric, each internal vertex the structure
    tensor ([x, y], z) on its ports in cyclic order.  With ``plus`` given the
    head of every edge is restricted to that half.
    """
    n = g.dim
    tinv = g.tinv
    L = d.nlegs
    es = dg.edges(d)
    choices = []
    for a, b in es:
        opts = []
        for x in range(n):
            for y in range(n):
                w = tinv[x][y]
                if not w:
                    continue
                if plus is not None:
                    head_x = not d.dirs[a]
                    hx, hy = (x, y) if head_x else (y, x)
                    if hx not in plus or hy in plus:
                        continue
                opts.append((x, y, w))
        choices.append(opts)
    # vertices completed after each edge, for early pruning
    done_at = [[] for _ in es]
    pos = {}
    for k, (a, b) in enumerate(es):
        pos[a] = pos[b] = k
    for v in range(d.nint):
        ports = (L + 3 * v, L + 3 * v + 1, L + 3 * v + 2)
        done_at[max(pos[h] for h in ports)].append(ports)
    lab = [0] * len(d.mate)

    def rec(k, w):
        if k == len(es):
            yield w, tuple(lab)
            return
        a, b = es[k]
        for x, y, c in choices[k]:
            lab[a], lab[b] = x, y
            ww = w * c
            for p in done_at[k]:
                ww *= g.structure(lab[p[0]], lab[p[1]], lab[p[2]])
                if not ww:
                    break
            if ww:
                yield from rec(k + 1, ww)

    yield from rec(0, Fraction(1))


def _eval_diagram(d: dg.Diagram, g: MetrizedLieAlgebra, plus=None) -> UEnvTensor:
    memo = g.__dict__.setdefault("_eval_memo", {})
    key = (d, plus)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = UEnvTensor(g, d.skel)
    order = [d.legs_on(c) for c in range(len(d.skel))]
    words = {}
    for w, lab in _labelings(d, g, plus):
        ws = tuple(tuple(lab[h] for h in ls) for ls in order)
        words[ws] = words.get(ws, 0) + w
    deg = d.degree
    for ws, w in words.items():
        if w:
            for ms, c in out._expand(ws).items():
                out._add_term((deg, ms), w * c)
    memo[key] = out
    return out


def _as_pairs(v):
    if isinstance(v, dg.Diagram):
        return v.skel, [(v, Fraction(1))]
    return v.skel, list(v.items())


def tg_eval(v, g: MetrizedLieAlgebra) -> UEnvTensor:
    """T_g of an undirected diagram or formal sum."""
    skel, pairs = _as_pairs(v)
    out = UEnvTensor(g, skel)
    for d, c in pairs:
        if d.directed:
            raise LieAlgebraError("tg_eval needs undirected diagrams")
        out = out + _eval_diagram(d, g) * c
    return out


def tar_eval(v, mt: ManinTriple) -> UEnvTensor:
    """Directed evaluation: heads carry g₊, tails carry g₋."""
    skel, pairs = _as_pairs(v)
    plus = frozenset(mt.plus)
    out = UEnvTensor(mt.g, skel)
    for d, c in pairs:
        if not d.directed:
            raise LieAlgebraError("tar_eval needs directed diagrams")
        if dg.has_sink_or_source(d):
            continue
        out = out + _eval_diagram(d, mt.g, plus) * c
    return out


def trace_on_rep(t: UEnvTensor, reps) -> list:
    """Coefficients by ħ-degree of the product of traces over components.

    ``reps`` holds one entry per component, either a rep name of the algebra
    or a list of matrices.
    """
    if len(reps) != len(t.skel):
        raise LieAlgebraError(f"need {len(t.skel)} representations, got {len(reps)}")
    mats = [t.g.reps[r] if isinstance(r, str) else r for r in reps]
    for m in mats:
        if len(m) != t.g.dim:
            raise LieAlgebraError("representation does not match the algebra")
    cache = {}

    def tr(comp, mono):
        key = (comp, mono)
        if key not in cache:
            dim = len(mats[comp][0])
            acc = _identity(dim)
            for x in mono:
                acc = _matmul(acc, mats[comp][x])
            cache[key] = sum((acc[i][i] for i in range(dim)), Fraction(0))
        return cache[key]

    top = max((k[0] for k in t.terms), default=0)
    out = [Fraction(0)] * (top + 1)
    for (d, ms), c in t.terms.items():
        v = c
        for comp, m in enumerate(ms):
            v *= tr(comp, m)
            if not v:
                break
        out[d] += v
    return out


# ---------------------------------------------------------------- built-ins

E, H, F = 0, 1, 2


def sl2() -> MetrizedLieAlgebra:
    """sl₂ with basis (e, h, f), the trace form and its fundamental and adjoint reps."""
    br = {(H, E): {E: 2}, (E, H): {E: -2}, (H, F): {F: -2}, (F, H): {F: 2},
          (E, F): {H: 1}, (F, E): {H: -1}}
    metric = ((0, 0, 1), (0, 2, 0), (1, 0, 0))
    fund = [[[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]]]
    adj = [[[0, -2, 0], [0, 0, 1], [0, 0, 0]],
           [[2, 0, 0], [0, 0, 0], [0, 0, -2]],
           [[0, 0, 0], [-1, 0, 0], [0, 2, 0]]]
    reps = {name: [[[Fraction(x) for x in row] for row in m] for m in ms]
            for name, ms in (("fund", fund), ("adj", adj))}
    return MetrizedLieAlgebra(("e", "h", "f"), br, metric, reps)


def borel_sl2() -> LieBialgebra:
    """Positive Borel of sl₂ with δ(e) = ½ e∧h."""
    return LieBialgebra(("e", "h"), {(1, 0): {0: 2}, (0, 1): {0: -2}},
                        {0: {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)}})


def two_dim_bialgebra() -> LieBialgebra:
    """[X, Y] = X with δ(X) = ½ X∧Y."""
    return LieBialgebra(("X", "Y"), {(0, 1): {0: 1}, (1, 0): {0: -1}},
                        {0: {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)}})


def doubled_sl2() -> ManinTriple:
    """The double of the Borel with its projection onto sl₂.

    Basis (e, h, e*, h*); p sends e*, h* to f and h/4.
    """
    mt = build_double(borel_sl2())
    p = {0: {E: Fraction(1)}, 1: {H: Fraction(1)}, 2: {F: Fraction(1)}, 3: {H: Fraction(1, 4)}}
    return ManinTriple(mt.g, mt.plus, mt.minus, p, sl2())


_BUILTIN = {"sl2": sl2, "dsl2": doubled_sl2}


def builtin(name: str):
    """Built-in algebra by name, a bundled data file stem, or a file path."""
    if name in _BUILTIN:
        return _BUILTIN[name]()
    bundled = Path(__file__).parent / "data" / f"{name}.lie"
    if bundled.exists():
        return load_lie(bundled)
    return load_lie(name)


def rep_action(t: UEnvTensor, rep) -> list:
    """Matrix by which a one-component tensor acts, summed over ħ-degrees."""
    if len(t.skel) != 1:
        raise LieAlgebraError("rep_action needs a single component")
    mats = t.g.reps[rep] if isinstance(rep, str) else rep
    dim = len(mats[0])
    out = [[Fraction(0)] * dim for _ in range(dim)]
    for (_, (m,)), c in t.terms.items():
        acc = _identity(dim)
        for x in m:
            acc = _matmul(acc, mats[x])
        for i in range(dim):
            for j in range(dim):
                out[i][j] += c * acc[i][j]
    return out
