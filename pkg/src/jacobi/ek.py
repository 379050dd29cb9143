"""Diagrammatic Etingof-Kazhdan quantization.

The Verma quotients M± of A⃗(↑), the isomorphism φ = (p₊⊠p₋)∘Δ onto M₊⊠M₋
and its inverse, the twist J built from the Kontsevich integral of a
parenthesized braid, and the coassociative structure A⃗_EK = A⃗_KZ twisted by
J⁻¹.  Also the unknot-conjecture and Polyak-space reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import diagram as dg
from . import lie
from . import maps as M
from . import tangle as T
from .rat import Inconsistent, solve_affine
from .spaces import (AARROW, ACHORD, POLYAK_ACYCLIC, POLYAK_CHORD, ConsistencyError,
                     FormalSum, generate_relations, restricted, space, verma)


@dataclass
class EKConfig:
    cap: int = 2
    word: str = "jbraid"


# ---------------------------------------------------------------- Verma modules

def verma_space(side: str, cap: int, strands: int = 1):
    """M₊ (side '+', RI) or M₋ (side '-', RO), optionally on several strands."""
    return space(("I",) * strands, cap, verma((side,) * strands))


def verma_project(v: FormalSum, side: str) -> dict:
    cap = v.cap if v.cap is not None else v.max_degree()
    return verma_space(side, cap, len(v.skel)).reduce(v)


def half_space(side: str, cap: int, strands: int = 1):
    """A⃗₊ (all legs incoming) for side '+', A⃗₋ (all outgoing) for side '-'."""
    flag = "in" if side == "+" else "out"
    return space(("I",) * strands, cap, restricted((flag,) * strands))


def verma_pbw_inverse(side: str, cap: int):
    """q: M_side → A⃗ of the opposite half, inverse to the projection.

    The quotient basis of M_side consists of diagrams whose legs all point
    the way that survives the RI/RO relation, so q is the inclusion of those
    diagrams; ``check_verma_inverse`` confirms q∘p = id and p∘q = id.
    """
    q_space = verma_space(side, cap)
    rs = q_space.rs
    for m in range(cap + 1):
        for i in q_space.basis(m):
            if not rs.proper(dg.lookup(i)):
                raise ConsistencyError(f"Verma basis element {i} has a surviving leg of the wrong kind")

    def q(coords: dict) -> FormalSum:
        return FormalSum(("I",), {i: Fraction(c) for i, c in coords.items() if c}, cap)

    return q


def check_verma_inverse(side: str, cap: int) -> dict:
    """Per degree: (dim M_side, dim of the opposite half, q∘p = id, p∘q = id)."""
    other = "-" if side == "+" else "+"
    mq = verma_space(side, cap)
    hq = half_space(other, cap)
    q = verma_pbw_inverse(side, cap)
    out = {}
    for m in range(cap + 1):
        qp = True
        for i in hq.basis(m):
            e = FormalSum(("I",), {i: Fraction(1)}, cap)
            back = q(mq.reduce(e))
            if not hq.is_zero(back - e):
                qp = False
        pq = all(mq.reduce(FormalSum(("I",), {i: Fraction(1)}, cap)) == {i: 1}
                 for i in mq.basis(m))
        out[m] = (mq.dim(m), hq.dim(m), qp, pq)
    return out


# ---------------------------------------------------------------- φ and its inverse

def _pm_space(k: int, cap: int):
    return space(("I",) * (2 * k), cap, verma(("+", "-") * k))


def phi(v: FormalSum, cap: int | None = None) -> dict:
    """(p₊⊠p₋)^{⊠k} ∘ Δ^{⊠k} on an element of A⃗^{⊠k}; coordinates in (M₊⊠M₋)^{⊠k}."""
    cap = cap if cap is not None else v.cap
    k = len(v.skel)
    w = v.with_cap(cap)
    for i in reversed(range(k)):
        w = M.cabling(w, i, 2)
    return _pm_space(k, cap).reduce(w)


def _pair_plan(k):
    return [("I", [(2 * i, False), (2 * i + 1, False)]) for i in range(k)]


def phi_inverse(coords: dict, k: int, cap: int) -> FormalSum:
    """Inverse of φ^{⊠k} by peeling the leg filtration.

    The top-leg part of a proper basis element b has preimage μ(b), which
    places the outgoing legs of each pair below the incoming ones; after
    subtracting φ(μ(b)) only terms with fewer legs may remain.
    """
    skel = ("I",) * (2 * k)
    plan = _pair_plan(k)
    out = FormalSum(("I",) * k, {}, cap)
    w = {i: Fraction(c) for i, c in coords.items() if c}
    guard = 0
    while w:
        top = max(dg.lookup(i).nlegs for i in w)
        part = FormalSum(skel, {i: c for i, c in w.items() if dg.lookup(i).nlegs == top}, cap)
        pre = M.merge(part, plan)
        out = out + pre
        img = phi(pre, cap)
        for i, c in img.items():
            v = w.get(i, 0) - c
            if v:
                w[i] = v
            else:
                w.pop(i, None)
        if w and max(dg.lookup(i).nlegs for i in w) >= top:
            raise ConsistencyError("φ is not triangular for the leg filtration")
        guard += 1
        if guard > 4 * cap + 4:
            raise ConsistencyError("φ⁻¹ recursion does not terminate")
    return out


def phi_matrix(cap: int, m: int):
    """Matrix of φ on the degree-m basis of A⃗ as (rows, source basis, target basis)."""
    src = space(("I",), cap, AARROW)
    tgt = _pm_space(1, cap)
    cols = src.basis(m)
    rows = [phi(FormalSum(("I",), {i: Fraction(1)}, cap), cap) for i in cols]
    return rows, cols, tgt.basis(m)


def phi_inverse_by_matrix(coords: dict, cap: int) -> dict:
    """φ⁻¹ on one strand by solving the linear system per degree (cross-check).

    Returns coordinates over the A⃗(↑) basis.
    """
    out = {}
    for m in range(cap + 1):
        part = {i: c for i, c in coords.items() if dg.lookup(i).degree == m}
        if not part:
            continue
        rows, cols, _ = phi_matrix(cap, m)
        keys = sorted({k for r in rows for k in r} | set(part))
        A = [{n: r[key] for n, r in enumerate(rows) if r.get(key)} for key in keys]
        b = {t: part[key] for t, key in enumerate(keys) if part.get(key)}
        try:
            x = solve_affine(A, b)
        except Inconsistent:
            raise ConsistencyError(f"φ is not onto in degree {m}") from None
        for n, c in x.items():
            if c:
                out[cols[n]] = c
    return out


# ---------------------------------------------------------------- the twist J

@dataclass
class TwistJ:
    J: FormalSum
    J_inv: FormalSum
    jtilde: FormalSum
    cap: int


def jtilde(H: T.QuasiHopfData, word: str = "jbraid") -> FormalSum:
    """Z(word) on four strands, ordered by their bottom endpoints."""
    m = T.canonical_order(T.z_eval(T.builtin(word), H))
    if len(m.ends) != 4 or any(e is None or e[0][0] != "b" for e in m.ends):
        raise T.TangleError(f"{word} is not a braid on four upward strands")
    return m.deco


def compute_J(cap: int = 2, assoc=None, word: str = "jbraid") -> TwistJ:
    """J = (φ⁻¹⊠φ⁻¹)(p₊⊠p₋⊠p₊⊠p₋)(ι J̃), with the degree ≤ 1 expansions checked."""
    H = T.a_kz(cap, assoc)
    jt = jtilde(H, word)
    want = M.pad(M.omega(cap), 1, 1) * Fraction(1, 2)
    q4 = space(("I",) * 4, cap, ACHORD)
    if not q4.equal(_upto(jt, 1), FormalSum.one(("I",) * 4, False, cap) + want):
        raise ConsistencyError(f"J̃ from {word} is not 1 + ½ t₂₃ through degree 1")
    coords = _pm_space(2, cap).reduce(M.iota(jt))
    J = phi_inverse(coords, 2, cap)
    if not j_expansion_ok(J, cap):
        raise ConsistencyError("J is not 1 + ½ r⃗ through degree 1")
    return TwistJ(J, M.inverse(J, cap), jt, cap)


def j_expansion_ok(J: FormalSum, cap: int) -> bool:
    """J = 1 + ½ r⃗ through degree 1."""
    a2 = space(("I", "I"), cap, AARROW)
    return a2.equal(_upto(J, 1), FormalSum.one(("I", "I"), True, cap) + M.rarrow(cap) * Fraction(1, 2))


def _upto(x: FormalSum, d: int) -> FormalSum:
    out = FormalSum(x.skel, {}, x.cap)
    for m in range(d + 1):
        out = out + x.degree_part(m)
    return out


def coassoc_residual(H_kz: T.QuasiHopfData, J: FormalSum) -> dict:
    """Φ·(Δ⊠id)(J)·J¹² − (id⊠Δ)(J)·J²³ reduced in A⃗(↑↑↑)."""
    lhs = M.prod(H_kz.phi, M.cabling(J, 0, 2), M.pad(J, 0, 1))
    rhs = M.prod(M.cabling(J, 1, 2), M.pad(J, 1, 0))
    return space(("I",) * 3, H_kz.cap, AARROW).reduce(lhs - rhs)


def build_aek(tj: TwistJ, assoc=None) -> T.QuasiHopfData:
    """A⃗_EK: ι(A_KZ) twisted by J⁻¹."""
    H = T.a_kz(tj.cap, assoc, directed=True)
    return T.twist(H, tj.J_inv, name="aek")


def rek_expansion_ok(H: T.QuasiHopfData) -> bool:
    """R_EK = 1 + r⃗ through degree 1."""
    a2 = H.space(("I", "I"))
    return a2.equal(_upto(H.R, 1), H.one(2) + M.rarrow(H.cap))


def qybe_residual(H: T.QuasiHopfData) -> dict:
    R = H.R
    r12, r13, r23 = M.relabel(R, (1, 2), 3), M.relabel(R, (1, 3), 3), M.relabel(R, (2, 3), 3)
    return H.space(("I",) * 3).reduce(M.prod(r12, r13, r23) - M.prod(r23, r13, r12))


def normalized_u(H: T.QuasiHopfData) -> FormalSum:
    """Drinfeld element after rescaling the antipode by g = α⁻¹.

    When Φ = 1 and βα = 1 the rescaled structure has α = β = 1 and
    u = S'(t)s with S'(x) = α⁻¹S(x)α.
    """
    ai = M.inverse(H.alpha, H.cap)
    return T.chain([ai, H.R, H.alpha], [(0, 0, False), (1, 1, True), (2, 0, False), (1, 0, False)],
                   H.cap)


def ek_ribbon(cap: int) -> FormalSum:
    """exp(−½(LeftHalfCirc + RightHalfCirc))."""
    x = (M.left_half_circle(cap) + M.right_half_circle(cap)) * Fraction(-1, 2)
    return M.exp(x, cap)


@dataclass
class EKResult:
    cap: int
    J: TwistJ
    H: T.QuasiHopfData
    checks: dict = field(default_factory=dict)


def run_ek(config: EKConfig = EKConfig(), assoc=None) -> EKResult:
    """The EK pipeline with all structural checks recorded by name."""
    cap = config.cap
    tj = compute_J(cap, assoc, config.word)
    H_kz = T.a_kz(cap, assoc, directed=True)
    H = build_aek(tj, assoc)
    one3 = H.one(3)
    ch = {
        "J_degree_le_1": j_expansion_ok(tj.J, cap),
        "coassociativity_residual_terms": len(coassoc_residual(H_kz, tj.J)),
        "phi_ek_trivial": H.equal(H.phi, one3),
        "beta_alpha_is_one": H.equal(M.product(H.beta, H.alpha), H.one(1)),
        "rek_expansion": rek_expansion_ok(H),
        "qybe_residual_terms": len(qybe_residual(H)),
        "ribbon_matches": H.equal(H.v, ek_ribbon(cap)),
    }
    return EKResult(cap, tj, H, ch)


# ---------------------------------------------------------------- unknot conjecture

def _close(x: FormalSum) -> FormalSum:
    return M.trace(x)


def rho_power(k: int, cap: int) -> FormalSum:
    r = M.rho(cap)
    out = FormalSum.one(("I",), True, cap)
    for _ in range(k):
        out = M.product(out, r)
    return out


def exercise_residual(cap: int = 2) -> dict:
    """Tr(½ϱ²) − Tr(ιχ(ω₂/48)) reduced in A⃗(○)."""
    lhs = _close(rho_power(2, cap) * Fraction(1, 2))
    rhs = _close(M.iota(M.chi(M.wheel(2).with_cap(cap) * Fraction(1, 48), 0)))
    return space(("O",), cap, AARROW).reduce(lhs - rhs)


def zk_unknot(cap: int, assoc=None) -> FormalSum:
    return T.z_closed(T.builtin("unknot_cn"), T.a_kz(cap, assoc))


def sl2_unknot_series(cap: int = 4, assoc=None) -> list:
    """Tr_fund of the sl₂ evaluation of ι Z_K(unknot) through ħ^cap."""
    mt = lie.doubled_sl2()
    t = lie.tar_eval(M.iota(zk_unknot(cap, assoc)), mt)
    return lie.trace_on_rep(mt.project(t), ["fund"])[: cap + 1]


def quantum_dimension_series(cap: int = 4) -> list:
    """Coefficients of e^{x/2} + e^{-x/2}."""
    from math import factorial
    return [Fraction(2, 2 ** k * factorial(k)) if k % 2 == 0 else Fraction(0)
            for k in range(cap + 1)]


def conjecture_suite(res: EKResult, lie_cap: int = 4, assoc=None) -> dict:
    """Report on the unknot conjecture; only (a) and (d) are exact claims."""
    cap = res.cap
    H = res.H
    out = {}
    out["exercise_residual_terms"] = len(exercise_residual(cap))
    u = normalized_u(H)
    rhs = M.product(M.exp(M.rho(cap), cap), H.v)
    diff = H.space(("I",)).reduce(u - rhs)
    out["u_ek_vs_exp_rho_v_by_degree"] = {
        m: sum(1 for i in diff if _deg(i) == m) for m in range(cap + 1)}
    mt = lie.doubled_sl2()
    tu = mt.project(lie.tar_eval(u, mt))
    tr = mt.project(lie.tar_eval(rhs, mt))
    out["u_ek_lie_agree"] = (tu - tr).truncate(cap).terms == {}
    out["u_ek_vs_exp_minus_rhc_terms"] = len(H.space(("I",)).reduce(
        u - M.exp(-M.right_half_circle(cap), cap)))
    circ = space(("O",), cap, AARROW)
    out["tr_rho_terms"] = len(circ.reduce(_close(rho_power(1, cap))))
    if cap >= 3:
        out["tr_rho3_terms"] = len(circ.reduce(_close(rho_power(3, cap))))
    sym = circ.reduce(_close(M.exp(M.rho(cap), cap)) - _close(M.exp(-M.rho(cap), cap)))
    out["tr_exp_rho_minus_tr_exp_minus_rho_by_degree"] = {
        m: sum(1 for i in sym if _deg(i) == m) for m in range(cap + 1)}
    z_ek = T.z_closed(T.builtin("unknot_cn"), H)
    z_k = M.iota(zk_unknot(cap, assoc))
    out["zek_equals_iota_zk"] = circ.is_zero(z_ek - z_k)
    out["zek_closed_form"] = circ.is_zero(T.unknot_closed_form(H) - z_ek)
    tad = M.exp(M.tadpole(cap) * Fraction(1, 2), cap)
    dconj = circ.reduce(_close(tad) - z_ek)
    out["unknot_conjecture_diff_by_degree"] = {
        m: sum(1 for i in dconj if _deg(i) == m) for m in range(cap + 1)}
    ser = sl2_unknot_series(lie_cap, assoc)
    out["sl2_unknot_series"] = ser
    out["sl2_unknot_matches"] = ser == quantum_dimension_series(lie_cap)
    ek_ser = lie.trace_on_rep(mt.project(lie.tar_eval(z_ek, mt)), ["fund"])[: cap + 1]
    out["sl2_unknot_from_ek_matches"] = ek_ser == quantum_dimension_series(cap)
    return out


def _deg(i) -> int:
    return dg.lookup(i).degree


# ---------------------------------------------------------------- Polyak spaces

def polyak_maps(cap: int = 2) -> dict:
    """i kills 6T, the tadpole is outside Im(j) in degree 1, ι kills 4T."""
    out = {}
    six_t_bad = 0
    six_t_total = 0
    for m in range(2, cap + 1):
        pa = space(("I",), cap, POLYAK_ACYCLIC)
        for r in generate_relations(("I",), m, POLYAK_CHORD):
            six_t_total += 1
            if not pa.is_zero(r):
                six_t_bad += 1
    out["six_t_instances"] = six_t_total
    out["six_t_surviving"] = six_t_bad
    out["tadpole_certificate"] = tadpole_certificate()
    pc = space(("I",), cap, POLYAK_CHORD)
    four_t_bad = 0
    four_t_total = 0
    for m in range(2, cap + 1):
        for r in generate_relations(("I",), m, ACHORD):
            four_t_total += 1
            if not pc.is_zero(M.iota(r)):
                four_t_bad += 1
    out["four_t_instances"] = four_t_total
    out["four_t_surviving"] = four_t_bad
    return out


def tadpole_certificate() -> dict:
    """Degree-1 coordinates in A⃗(↑) of Im(j) and of the tadpole.

    The certificate is a linear functional (over the quotient basis) that
    vanishes on every image of j and is nonzero on the downward tadpole.
    """
    a = space(("I",), 1, AARROW)
    basis = a.basis(1)
    imgs = [a.reduce(FormalSum.of(d)) for d in dg.enumerate_diagrams(("I",), 1, True)
            if dg.is_acyclic(d) and not dg.has_sink_or_source(d)]
    tad = a.reduce(M.tadpole_down(1))
    # functional: solve f·img = 0 for all images, f·tad = 1
    A = [{n: img.get(b, 0) for n, b in enumerate(basis) if img.get(b)} for img in imgs]
    A.append({n: tad.get(b, 0) for n, b in enumerate(basis) if tad.get(b)})
    rhs = {len(imgs): Fraction(1)}
    try:
        f = solve_affine(A, rhs)
    except Inconsistent:
        return {"outside": False}
    func = {basis[n]: c for n, c in f.items() if c}
    ok = all(sum(func.get(b, 0) * c for b, c in img.items()) == 0 for img in imgs) and \
        sum(func.get(b, 0) * c for b, c in tad.items()) == 1
    return {"outside": ok, "functional": func, "image": imgs, "tadpole": tad}
