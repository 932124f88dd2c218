"""Overmonads, over-Eilenberg–Moore overcategories, the comparison
overfunctor and a strict Beck monadicity verdict."""
from __future__ import annotations

from dataclasses import dataclass, field

from .adjunction import Adjunction, require_valid, validate_adjunction
from .fincat import (
    FinCat,
    FunctorData,
    Morphism,
    NatTransData,
    ValidationReport,
    compose_functors,
    identity_functor,
    pair_id,
    validate_nat_trans,
)
from .overcat import Overcategory, OverfunctorData, default_budget, validate_overfunctor
from .overlimits import DEFAULT_SHAPES, is_overcoequalizer, k_equalizer_report, overcompleteness_report


@dataclass
class Overmonad:
    """Endo-overfunctor T (same base) with vertical η: 1 ⇒ T, μ: T² ⇒ T."""
    ov: Overcategory
    T: FunctorData
    eta: dict[str, str]
    mu: dict[str, str]
    name: str = ""

    def as_overfunctor(self) -> OverfunctorData:
        return OverfunctorData(self.ov, self.ov, self.T, identity_functor(self.ov.base))

    def same_as(self, other: "Overmonad") -> bool:
        return self.T.same_maps(other.T) and self.eta == other.eta and self.mu == other.mu


def validate_overmonad(M: Overmonad) -> ValidationReport:
    rep = ValidationReport()
    ov, T = M.ov, M.T
    E = ov.total
    rep.extend(validate_overfunctor(M.as_overfunctor()), "T.")
    if not rep.ok:
        return rep
    if set(M.eta) != set(E.objects) or set(M.mu) != set(E.objects):
        rep.add("components", "eta/mu do not cover the objects")
        return rep
    TT = compose_functors(T, T)
    rep.extend(validate_nat_trans(NatTransData(identity_functor(E), T, M.eta)), "eta.")
    rep.extend(validate_nat_trans(NatTransData(TT, T, M.mu)), "mu.")
    if not rep.ok:
        return rep
    for x in E.objects:
        if not ov.vertical(M.eta[x]):
            rep.add("eta.vertical", x)
        if not ov.vertical(M.mu[x]):
            rep.add("mu.vertical", x)
        Tx = T.ob(x)
        if E.comp(M.mu[x], M.eta[Tx]) != E.identity[Tx]:
            rep.add("left_unit", x)
        if E.comp(M.mu[x], T.mor(M.eta[x])) != E.identity[Tx]:
            rep.add("right_unit", x)
        if E.comp(M.mu[x], T.mor(M.mu[x])) != E.comp(M.mu[x], M.mu[Tx]):
            rep.add("associativity", x)
    return rep


def identity_overmonad(ov: Overcategory) -> Overmonad:
    E = ov.total
    ids = {x: E.identity[x] for x in E.objects}
    return Overmonad(ov, identity_functor(E), dict(ids), dict(ids), name="identity")


# ---------------------------------------------------------------------------
# Eilenberg–Moore


def algebra_id(x: str, h: str) -> str:
    return pair_id(x, h)


@dataclass
class EilenbergMoore:
    ov: Overcategory
    monad: Overmonad
    algebras: dict[str, tuple[str, str]]
    forgetful: OverfunctorData
    free: OverfunctorData
    adjunction: Adjunction
    underlying: dict[str, str] = field(default_factory=dict)

    def free_algebra(self, x: str) -> str:
        return self.free.F.ob(x)


def eilenberg_moore(M: Overmonad) -> EilenbergMoore:
    """E^T with objects ``(x|h)`` and morphisms ``(f|(x|h)|(y|k))``."""
    ov, T = M.ov, M.T
    E, A = ov.total, ov.arity
    algebras = {}
    for x in E.objects:
        Tx = T.ob(x)
        for h in E.hom(Tx, x):
            if not ov.vertical(h):
                continue
            if E.comp(h, M.eta[x]) != E.identity[x]:
                continue
            if E.comp(h, T.mor(h)) != E.comp(h, M.mu[x]):
                continue
            algebras[algebra_id(x, h)] = (x, h)
    objects = list(algebras)
    morphisms, under = [], {}
    for a in objects:
        x, h = algebras[a]
        for b in objects:
            y, k = algebras[b]
            for f in E.hom(x, y):
                if E.comp(k, T.mor(f)) == E.comp(f, h):
                    mid = pair_id(f, a, b)
                    morphisms.append(Morphism(mid, a, b))
                    under[mid] = f
    identity = {a: pair_id(E.identity[algebras[a][0]], a, a) for a in objects}
    out = {}
    for m in morphisms:
        out.setdefault(m.src, []).append(m)
    compose = {}
    for m in morphisms:
        for n in out.get(m.dst, ()):
            compose[n.id, m.id] = pair_id(E.comp(under[n.id], under[m.id]), m.src, n.dst)
    ET = FinCat(objects, morphisms, identity, compose, name=f"{ov.name}^T" if ov.name else "E^T")
    arity = FunctorData(ET, ov.base, {a: A.ob(algebras[a][0]) for a in objects}, {m: A.mor(f) for m, f in under.items()})
    ovT = Overcategory(ET, ov.base, arity, name=ET.name)
    G = FunctorData(ET, E, {a: algebras[a][0] for a in objects}, dict(under))
    free_obj = {x: algebra_id(T.ob(x), M.mu[x]) for x in E.objects}
    free_mor = {m.id: pair_id(T.mor(m.id), free_obj[m.src], free_obj[m.dst]) for m in E.morphisms}
    F = FunctorData(E, ET, free_obj, free_mor)
    forgetful = OverfunctorData(ovT, ov, G, identity_functor(ov.base))
    free = OverfunctorData(ov, ovT, F, identity_functor(ov.base))
    counit = {a: pair_id(algebras[a][1], free_obj[algebras[a][0]], a) for a in objects}
    adj = Adjunction(free, forgetful, dict(M.eta), counit, name="eilenberg-moore")
    return EilenbergMoore(ovT, M, algebras, forgetful, free, adj, under)


def free_algebra_presentation(em: EilenbergMoore, a: str) -> tuple[str, str, str]:
    """The canonical fork F^T T x ⇉ F^T x -> (x, h): returns (μ-arrow, T h-arrow, h-arrow) in E^T."""
    M = em.monad
    x, h = em.algebras[a]
    T = M.T
    Tx = T.ob(x)
    FTx = em.free.F.ob(Tx)
    Fx = em.free.F.ob(x)
    mu_arrow = pair_id(M.mu[x], FTx, Fx)
    Th_arrow = pair_id(T.mor(h), FTx, Fx)
    h_arrow = pair_id(h, Fx, a)
    return mu_arrow, Th_arrow, h_arrow


def em_property_suite(M: Overmonad, budget: int | None = None, shapes=DEFAULT_SHAPES) -> dict:
    """Algebras as overcoequalizers of free algebras, inheritance of
    overcompleteness and K-equalizers, and the overcoequalizers ⇔
    overcocompleteness equivalence, all on the given finite instance."""
    budget = default_budget() if budget is None else budget
    em = eilenberg_moore(M)
    presentations = {}
    for a in em.algebras:
        mu_a, Th_a, h_a = free_algebra_presentation(em, a)
        presentations[a] = is_overcoequalizer(em.ov, mu_a, Th_a, h_a)
    base_comp = overcompleteness_report(M.ov, budget, shapes)
    alg_comp = overcompleteness_report(em.ov, budget, shapes)
    base_keq = k_equalizer_report(M.ov)
    alg_keq = k_equalizer_report(em.ov)
    E_complete = base_comp["limits"]["complete"]
    ET_complete = alg_comp["limits"]["complete"]
    E_cocomplete = base_comp["colimits"]["complete"]
    coeq = alg_comp["colimits"]["shapes"].get("parallel", {})
    ET_coequalizers = coeq.get("status") == "ok"
    ET_cocomplete = alg_comp["colimits"]["complete"]
    return {
        "budget": budget,
        "algebras": len(em.algebras),
        "algebras_are_overcoequalizers": all(presentations.values()),
        "presentations": presentations,
        "E_overcomplete": E_complete,
        "ET_overcomplete": ET_complete,
        "overcompleteness_inherited": (not E_complete) or ET_complete,
        "E_k_equalizers": base_keq["ok"],
        "ET_k_equalizers": alg_keq["ok"],
        "k_equalizers_inherited": (not base_keq["ok"]) or alg_keq["ok"],
        "E_overcocomplete": E_cocomplete,
        "ET_overcoequalizers": ET_coequalizers,
        "ET_overcocomplete": ET_cocomplete,
        "coequalizer_equivalence": (not E_cocomplete) or (ET_coequalizers == ET_cocomplete),
        "missing_overcoequalizer": coeq.get("failing"),
        "ET_k_equalizer_witness": alg_keq["witness"],
    }


# ---------------------------------------------------------------------------
# adjunctions, comparison and Beck


def overmonad_from_overadjunction(adj: Adjunction) -> Overmonad:
    """T = G∘F, η the unit, μ = GεF."""
    require_valid(adj)
    F, G = adj.left.F, adj.right.F
    T = compose_functors(G, F)
    mu = {x: G.mor(adj.counit[F.ob(x)]) for x in adj.C.total.objects}
    return Overmonad(adj.C, T, dict(adj.unit), mu)


def comparison_overfunctor(adj: Adjunction, em: EilenbergMoore | None = None) -> tuple[OverfunctorData, EilenbergMoore, dict]:
    """K(a) = (G a, G ε_a); returns K, the EM data, and the two table
    equalities G^T∘K = G and K∘F = F^T."""
    if em is None:
        em = eilenberg_moore(overmonad_from_overadjunction(adj))
    D = adj.D.total
    G = adj.right.F
    omap = {a: algebra_id(G.ob(a), G.mor(adj.counit[a])) for a in D.objects}
    mmap = {m.id: pair_id(G.mor(m.id), omap[m.src], omap[m.dst]) for m in D.morphisms}
    K = FunctorData(D, em.ov.total, omap, mmap)
    Ko = OverfunctorData(adj.D, em.ov, K, identity_functor(adj.D.base))
    checks = {
        "valid": validate_overfunctor(Ko).ok,
        "GT_K_equals_G": compose_functors(em.forgetful.F, K).same_maps(G),
        "K_F_equals_FT": compose_functors(K, adj.left.F).same_maps(em.free.F),
    }
    return Ko, em, checks


@dataclass
class BeckVerdict:
    strictly_monadic: bool
    condition1: bool
    condition3: bool
    agree: bool
    witness: dict | None
    notes: list[str]
    pairs_checked: int = 0

    def to_json(self):
        return {
            "strictly_monadic": self.strictly_monadic,
            "condition1": self.condition1,
            "condition3": self.condition3,
            "agree": self.agree,
            "witness": self.witness,
            "notes": list(self.notes),
            "pairs_checked": self.pairs_checked,
        }


def _k_invertible(K: FunctorData) -> tuple[bool, dict | None]:
    dom, cod = K.dom, K.cod
    obj_images = {}
    for x in dom.objects:
        obj_images.setdefault(K.ob(x), []).append(x)
    collapsed = {y: xs for y, xs in obj_images.items() if len(xs) > 1}
    missed = [y for y in cod.objects if y not in obj_images]
    if collapsed or missed:
        return False, {
            "kind": "objects",
            "domain_objects": len(dom.objects),
            "codomain_objects": len(cod.objects),
            "collapsed": {y: sorted(xs) for y, xs in sorted(collapsed.items())},
            "missed": sorted(missed),
        }
    mor_images = {}
    for m in dom.morphisms:
        mor_images.setdefault(K.mor(m.id), []).append(m.id)
    collapsed = {y: xs for y, xs in mor_images.items() if len(xs) > 1}
    missed = [m.id for m in cod.morphisms if m.id not in mor_images]
    if collapsed or missed:
        return False, {
            "kind": "morphisms",
            "domain_morphisms": len(dom.morphisms),
            "codomain_morphisms": len(cod.morphisms),
            "collapsed": {y: sorted(xs) for y, xs in sorted(collapsed.items())},
            "missed": sorted(missed),
        }
    return True, None


def split_coequalizers(ov: Overcategory, f: str, g: str) -> list[tuple[str, str, str]]:
    """All (h, s, t) making f, g, h a split overfork (vertical data)."""
    E = ov.total
    a, b = E.src(f), E.dst(f)
    found = []
    for h in E.out_of(b):
        if not ov.vertical(h) or E.comp(h, f) != E.comp(h, g):
            continue
        c = E.dst(h)
        for s in E.hom(c, b):
            if not ov.vertical(s) or E.comp(h, s) != E.identity[c]:
                continue
            for t in E.hom(b, a):
                if ov.vertical(t) and E.comp(f, t) == E.identity[b] and E.comp(g, t) == E.comp(s, h):
                    found.append((h, s, t))
    return found


def creation_check(adj: Adjunction) -> tuple[bool, dict | None, int]:
    """Condition (3): G creates overcoequalizers of vertical pairs whose
    image has a split overcoequalizer."""
    D, C = adj.D, adj.C
    G = adj.right.F
    T = D.total
    checked = 0
    for x in T.objects:
        for y in T.objects:
            hom = [f for f in T.hom(x, y) if D.vertical(f)]
            for i, f in enumerate(hom):
                for g in hom[i:]:
                    splits = split_coequalizers(C, G.mor(f), G.mor(g))
                    if not splits:
                        continue
                    checked += 1
                    for e in sorted({h for h, _, _ in splits}):
                        lifts = [h2 for h2 in T.out_of(y) if G.mor(h2) == e]
                        if len(lifts) != 1:
                            return False, {"kind": "lift", "pair": [f, g], "coequalizer": e, "lifts": sorted(lifts)}, checked
                        if not is_overcoequalizer(D, f, g, lifts[0]):
                            return False, {"kind": "not_coequalizer", "pair": [f, g], "coequalizer": e, "lift": lifts[0]}, checked
    return True, None, checked


def beck_verdict(adj: Adjunction) -> BeckVerdict:
    """Condition (1), strict invertibility of K, against condition (3),
    creation of split-overcoequalizer pairs; both computed independently."""
    require_valid(adj)
    Ko, em, checks = comparison_overfunctor(adj)
    notes = []
    if not (checks["GT_K_equals_G"] and checks["K_F_equals_FT"] and checks["valid"]):
        notes.append("comparison overfunctor failed its defining equations")
    cond1, w1 = _k_invertible(Ko.F)
    cond3, w3, checked = creation_check(adj)
    if not cond1 and w1["kind"] == "objects" and w1["collapsed"] and all(
        em.ov.total.isomorphic(*xs[:2]) or adj.D.total.isomorphic(*xs[:2]) for xs in w1["collapsed"].values()
    ):
        notes.append("K identifies isomorphic objects: an equivalence at best, not an isomorphism")
    notes.append("absolute overcoequalizers approximated by split ones")
    agree = cond1 == cond3
    if not agree:
        notes.append("condition (1) and condition (3) disagree")
    witness = None
    if not cond1 or not cond3:
        witness = {"condition1": w1, "condition3": w3}
    return BeckVerdict(cond1, cond1, cond3, agree, witness, notes, checked)
