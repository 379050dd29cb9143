"""Named verification suites, one per acceptance criterion.

Each suite returns a SuiteResult whose checks are (label, passed, detail)
triples; a suite passes when every check does.  Report-only observations are
recorded in ``notes`` and never affect the outcome.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import diagram as dg
from . import ek
from . import horizontal as hz
from . import lie
from . import maps as M
from . import tangle as T
from .rat import rank
from .spaces import A, AARROW, ACHORD, FormalSum, generate_relations, space


@dataclass
class SuiteConfig:
    cap: int = 3          # undirected cap for the tangle suites
    dcap: int = 2         # directed cap for the EK pipeline
    hcap: int = 4         # horizontal cap for the associator
    wheels_cap: int = 4
    seed: int = 2024
    samples: int = 100


@dataclass
class SuiteResult:
    name: str
    title: str
    checks: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def add(self, label, ok, detail=""):
        self.checks.append((label, bool(ok), detail))

    def summary(self) -> str:
        n = sum(1 for _, ok, _ in self.checks if ok)
        return f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({n}/{len(self.checks)} checks) {self.title}"


def _basis_sums(q, m):
    return [FormalSum(q.skel, {i: Fraction(1)}, q.cap) for i in q.basis(m)]


# ---------------------------------------------------------------- 1. dimensions

def suite_dims(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("dims", "dim A(○) two ways, degrees 0-4")
    jac = space(("O",), 4, A)
    cho = space(("O",), 4, ACHORD)
    a = [jac.dim(m) for m in range(5)]
    b = [cho.dim(m) for m in range(5)]
    r.add("jacobi route", a == [1, 1, 2, 3, 6], a)
    r.add("chord + 4T route", b == [1, 1, 2, 3, 6], b)
    r.add("routes agree", a == b)
    # closed body components change the dimensions; reported, not asserted
    for skel in (("I",), ("I", "I")):
        dims = {flag: [space(skel, 2, A, connected_body_only=flag).dim(m) for m in range(3)]
                for flag in (True, False)}
        r.notes[f"A' vs A on {' '.join(skel)}"] = f"{dims[True]} vs {dims[False]}"
    return r


# ---------------------------------------------------------------- 2. PBW

def suite_pbw(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("pbw", "σ∘χ = id on B, χ∘σ = id on A")
    for directed, top in ((False, 3), (True, 2)):
        rs = AARROW if directed else A
        tag = "directed" if directed else "undirected"
        B = space(("*",), top, rs)
        Aq = space(("I",), top, rs)
        for m in range(top + 1):
            ok1 = all(B.is_zero(M.sigma(M.chi(b, 0)) - b) for b in _basis_sums(B, m))
            ok2 = all(Aq.is_zero(M.chi(M.sigma(x), 0) - x) for x in _basis_sums(Aq, m))
            r.add(f"{tag} degree {m}: σχ = id", ok1, B.dim(m))
            r.add(f"{tag} degree {m}: χσ = id", ok2, Aq.dim(m))
    return r


# ---------------------------------------------------------------- 3. Γ_D

def random_instance(rng: random.Random, max_degree: int = 3):
    """A random diagram on ↑ with k ≥ 2 legs and two random transposition words."""
    while True:
        m = rng.randint(1, max_degree)
        ds = [d for d in dg.enumerate_diagrams(("I",), m) if d.nlegs >= 2]
        if ds:
            break
    d = rng.choice(ds)
    k = d.nlegs
    w1 = tuple(rng.randint(1, k - 1) for _ in range(rng.randint(0, 4)))
    w2 = tuple(rng.randint(1, k - 1) for _ in range(rng.randint(0, 4)))
    return d, w1, w2


def suite_gamma(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("gamma", "Γ_D cocycle and telescoping identities")
    rng = random.Random(cfg.seed)
    q = space(("I",), 3, A)
    cocycle = tele = 0
    for _ in range(cfg.samples):
        d, w1, w2 = random_instance(rng)
        lhs = M.gamma(w1 + w2, d)
        rhs = M.gamma(w1, M.act_word(w2, d)) + M.gamma(w2, d)
        cocycle += q.is_zero(lhs - rhs)
        w = w1 + w2
        pd = FormalSum.of(M.act_word(w, d))
        tele += q.is_zero(lhs - (FormalSum.of(d) - pd))
    r.add("cocycle identity", cocycle == cfg.samples, f"{cocycle}/{cfg.samples}")
    r.add("telescoping identity", tele == cfg.samples, f"{tele}/{cfg.samples}")
    return r


# ---------------------------------------------------------------- 4. ι

def invariance_defect(v: FormalSum, incoming: bool) -> FormalSum:
    """(arrow to ∗ below v) − (arrow to ∗ above v) on (↑, ∗)."""
    cap = v.cap
    x = dg.Diagram(("I", "*"), ((0, 0), (1, 0)), (1, 0), (False, True) if incoming else (True, False))
    arrow = FormalSum.of(x, 1, cap)
    vv = M.merge(v, [("I", [(0, False)]), ("*", [])])
    return M.product(arrow, vv) - M.product(vv, arrow)


def suite_iota(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("iota", "ι kills relations; ι-images are invariant")
    for skel in (("I",), ("I", "I")):
        top = 3 if len(skel) == 1 else 2
        qa = space(skel, top, AARROW)
        for m in range(1, top + 1):
            rels = generate_relations(skel, m, A)
            bad = sum(1 for rel in rels if not qa.is_zero(M.iota(rel)))
            r.add(f"ι of A-relations on {' '.join(skel)} degree {m}", bad == 0,
                  f"{len(rels)} instances")
    qi = space(("I", "*"), 3, AARROW)
    base = space(("I",), 2, A)
    for m in range(1, 3):
        for incoming in (True, False):
            bad = 0
            for x in _basis_sums(base, m):
                v = M.iota(x).with_cap(3)
                if not qi.is_zero(invariance_defect(v, incoming)):
                    bad += 1
            r.add(f"ι-images invariant, degree {m}, {'incoming' if incoming else 'outgoing'} leg",
                  bad == 0, f"{base.dim(m)} basis elements")
    r.notes["ι kernel dimension by degree"] = iota_kernel_dims()
    return r


def iota_kernel_dims() -> dict:
    """dim ker(ι: A → A⃗) per degree on ↑ (≤ 3) and ↑↑ (≤ 2); data only."""
    out = {}
    for skel, top in ((("I",), 3), (("I", "I"), 2)):
        qa = space(skel, top, A)
        qd = space(skel, top, AARROW)
        for m in range(top + 1):
            rows = [qd.reduce(M.iota(x)) for x in _basis_sums(qa, m)]
            out[f"{' '.join(skel)} degree {m}"] = qa.dim(m) - rank(rows)
    return out


# ---------------------------------------------------------------- 5. Lie evaluation

def suite_lie(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("lie", "T_g and T⃗ evaluations")
    g = lie.sl2()
    mt = lie.doubled_sl2()
    for skel in (("I",), ("I", "I"), ("I", "I", "I")):
        for m in (1, 2):
            rels = generate_relations(skel, m, A)
            bad = sum(1 for rel in rels if lie.tg_eval(rel, g))
            r.add(f"T_sl2 of A-relations on {' '.join(skel)} degree {m}", bad == 0, len(rels))
            rels = generate_relations(skel, m, AARROW)
            bad = sum(1 for rel in rels if lie.tar_eval(rel, mt))
            r.add(f"T⃗ of directed relations on {' '.join(skel)} degree {m}", bad == 0, len(rels))
    rng = random.Random(cfg.seed)
    pool = [d for skel in (("I",), ("I", "I")) for m in (1, 2) for d in dg.enumerate_diagrams(skel, m)]
    sample = rng.sample(pool, 20)
    ok = all(lie.tar_eval(M.iota(FormalSum.of(d)), mt) == lie.tg_eval(FormalSum.of(d), mt.g)
             for d in sample)
    r.add("T⃗∘ι = T_g̃ on 20 random diagrams", ok)
    p = mt.project(lie.tar_eval(M.rarrow(), mt))
    want = lie.UEnvTensor(mt.target, ("I", "I"), {(1, ((lie.E,), (lie.F,))): Fraction(1),
                                          (1, ((lie.H,), (lie.H,))): Fraction(1, 4)})
    r.add("p(T⃗(r⃗)) = e⊗f + ¼h⊗h", p == want, str(p))
    om = lie.tg_eval(M.omega(), g)
    want = lie.UEnvTensor(g, ("I", "I"), {(1, ((lie.E,), (lie.F,))): Fraction(1),
                                          (1, ((lie.F,), (lie.E,))): Fraction(1),
                                          (1, ((lie.H,), (lie.H,))): Fraction(1, 2)})
    r.add("T_sl2(Ω) = e⊗f + f⊗e + ½h⊗h", om == want, str(om))
    rho = mt.project(lie.tar_eval(M.rho(), mt))
    r.add("p(T⃗(ϱ)) = ½h", rho == lie.UEnvTensor(mt.target, ("I",), {(1, ((lie.H,),)): Fraction(1, 2)}),
          str(rho))
    return r


# ---------------------------------------------------------------- 6. associator

def suite_assoc(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("assoc", f"rational associator through degree {cfg.hcap}")
    a = T.solve_associator_cached(cfg.hcap)
    for k, v in hz.verify_associator(a).items():
        r.add(k, v)
    r.notes["free_zeroed"] = a.free_zeroed
    r.notes["phi_2"] = hz.format_table(a.part(2)).strip()
    return r


# ---------------------------------------------------------------- 7. KZ structure

def suite_kz(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("kz", "u = e^{-C/2}, Δ(C), centrality of Ω")
    H = T.a_kz(3)
    q1 = space(("I",), 3, A)
    u = T.u_element(H)
    r.add("u = e^{-C/2} through degree 3", q1.equal(u, M.exp(M.casimir(3) * Fraction(-1, 2), 3)))
    C = M.casimir(3)
    q2 = space(("I", "I"), 3, A)
    one = FormalSum.one(("I",), False, 3)
    rhs = M.tensor(one, C) + M.tensor(C, one) + M.omega(3) * 2
    r.add("Δ(C) = 1⊠C + C⊠1 + 2Ω", q2.equal(M.coproduct(C, 0), rhs))
    q22 = space(("I", "I"), 4, A)
    bad = 0
    n = 0
    for m in range(3):
        for x in _basis_sums(q22, m):
            n += 1
            if not q22.is_zero(M.commutator(M.omega(4), x.with_cap(4))):
                bad += 1
    r.add("[Ω, D] = 0 on the degree ≤ 2 basis of A(↑↑)", bad == 0, f"{n} elements")
    return r


# ---------------------------------------------------------------- 8. tangle relations

def suite_tangle(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("tangle", f"relations R1-R10 for A_KZ at cap {cfg.cap}")
    H = T.a_kz(cfg.cap)
    rows = T.relation_suite(H)
    for name, ok in rows:
        r.add(name, ok)
    for k, v in T.axiom_report(H).items():
        r.add(f"axiom {k}", v)
    curl = T.canonical_order(T.z_eval(T.builtin("curl"), H))
    ident = T.canonical_order(T.decorated_strands(("u",), H.v))
    r.add("Z(curl) = v", T.morphisms_equal(curl, ident, H))
    z1 = T.z_closed(T.builtin("unknot_cn"), H)
    z2 = T.z_closed(T.builtin("unknot_cp"), H)
    qo = H.space(("O",))
    r.add("unknot presentations agree", qo.equal(z1, z2))
    r.add("unknot matches the closed form", qo.equal(z1, T.unknot_closed_form(H)))
    return r


# ---------------------------------------------------------------- 9. wheels

def wheels_value(cap: int) -> FormalSum:
    """1 + ω₂/48 − ω₄/5760 + ω₂⊔ω₂/4608 on ∗, truncated at cap."""
    w2, w4 = M.wheel(2).with_cap(cap), M.wheel(4).with_cap(cap)
    out = FormalSum.one(("*",), False, cap) + w2 * Fraction(1, 48)
    if cap >= 4:
        out = out - w4 * Fraction(1, 5760) + M.disjoint_union(w2, w2) * Fraction(1, 4608)
    return out


def suite_wheels(cfg: SuiteConfig) -> SuiteResult:
    cap = cfg.wheels_cap
    r = SuiteResult("wheels", f"σ Z(unknot) matches the wheels formula through degree {cap}")
    H = T.a_kz(cap)
    # an open-strand lift of Z(unknot); closing it is checked below
    x = M.prod(H.u_inv, H.v, M.antipode(H.beta), H.alpha)
    s = M.sigma(x)
    qb = space(("*",), cap, A)
    r.add("σ(u⁻¹vS(β)α) = wheels", qb.equal(s, wheels_value(cap)))
    z = T.z_closed(T.builtin("unknot_cn"), H)
    r.add("closing the strand gives Z(unknot)", H.space(("O",)).equal(M.trace(x), z))
    return r


# ---------------------------------------------------------------- 10. twists

def suite_twist(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("twist", "twist invariance and the conjugation formula")
    cap = cfg.cap
    H = T.a_kz(cap)
    F = T.random_symmetric_twist(cap, cfg.seed, max_degree=2)
    HF = T.twist(H, F)
    for k, v in T.axiom_report(HF).items():
        r.add(f"twisted axiom {k}", v)
    for w in ("unknot_cn", "unknot_cp", "hopf"):
        word = T.builtin(w)
        qs = H.space(T.z_closed(word, H).skel)
        r.add(f"Z_F({w}) = Z({w})", qs.equal(T.z_closed(word, H), T.z_closed(word, HF)))
    for g in _fundamental_generators():
        lhs = T.canonical_order(T.z_generator(g, HF))
        rhs = T.canonical_order(T.twist_conjugate(H, F, g))
        r.add(f"conjugation formula on {g}", T.morphisms_equal(lhs, rhs, HF))
    return r


def _fundamental_generators():
    G = T.gen
    return [G("ra"), G("la"), G("ov"), G("un"), G("cp"), G("cn"), G("ap"), G("an"),
            G("ra", A="d"), G("ov", A="d"), G("un", B="d")]


# ---------------------------------------------------------------- 11. EK pipeline

_EK_CACHE: dict = {}


def ek_result(cap: int):
    if cap not in _EK_CACHE:
        _EK_CACHE[cap] = ek.run_ek(ek.EKConfig(cap=cap))
    return _EK_CACHE[cap]


def suite_ek(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("ek", f"EK twist at directed cap {cfg.dcap}")
    res = ek_result(cfg.dcap)
    c = res.checks
    r.add("J = 1 + ½r⃗ through degree 1", c["J_degree_le_1"])
    r.add("coassociativity residual is zero", c["coassociativity_residual_terms"] == 0,
          c["coassociativity_residual_terms"])
    r.add("Φ_EK = 1", c["phi_ek_trivial"])
    r.add("β_EK α_EK = 1", c["beta_alpha_is_one"])
    r.add("R_EK = 1 + r⃗ through degree 1", c["rek_expansion"])
    r.add("QYBE for R_EK", c["qybe_residual_terms"] == 0, c["qybe_residual_terms"])
    r.add("v_EK = exp(−½(LHC + RHC))", c["ribbon_matches"])
    return r


# ---------------------------------------------------------------- 12. unknot conjecture

def suite_unknot(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("unknot", "verifiable parts of the unknot conjecture")
    r.add("Tr(½ϱ²) = Tr(ιχ(ω₂/48))", not ek.exercise_residual(2))
    ser = ek.sl2_unknot_series(4)
    r.add("Tr_fund T_sl2(ι Z_K(unknot)) = 2 + ħ²/4 + ħ⁴/192", ser == ek.quantum_dimension_series(4),
          [str(x) for x in ser])
    res = ek_result(cfg.dcap)
    rep = ek.conjecture_suite(res, lie_cap=4)
    r.add("Z_EK(unknot) = ι Z_K(unknot)", rep["zek_equals_iota_zk"])
    r.add("sl2 trace of Z_EK(unknot) through the directed cap", rep["sl2_unknot_from_ek_matches"])
    r.notes.update({k: v for k, v in rep.items() if k not in ("sl2_unknot_series",)})
    return r


# ---------------------------------------------------------------- 13. Polyak

def suite_polyak(cfg: SuiteConfig) -> SuiteResult:
    r = SuiteResult("polyak", "Polyak spaces: 6T, tadpole certificate, ι of 4T")
    rep = ek.polyak_maps(cfg.dcap)
    r.add("every 6T instance dies under i", rep["six_t_surviving"] == 0, rep["six_t_instances"])
    cert = rep["tadpole_certificate"]
    func = sorted((dg.one_line(dg.lookup(i)), str(c)) for i, c in cert.get("functional", {}).items())
    r.add("tadpole outside Im(j) in degree 1", cert["outside"], func)
    r.add("ι of 4T vanishes in the Polyak chord space", rep["four_t_surviving"] == 0,
          rep["four_t_instances"])
    return r


SUITES = {
    "dims": suite_dims,
    "pbw": suite_pbw,
    "gamma": suite_gamma,
    "iota": suite_iota,
    "lie": suite_lie,
    "assoc": suite_assoc,
    "kz": suite_kz,
    "tangle": suite_tangle,
    "wheels": suite_wheels,
    "twist": suite_twist,
    "ek": suite_ek,
    "unknot": suite_unknot,
    "polyak": suite_polyak,
}

ALIASES = {"ek-degree2": "unknot", "associator": "assoc", "relations": "tangle"}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteResult:
    return SUITES[ALIASES.get(name, name)](cfg or SuiteConfig())
