"""Comma overcategories (B↓F), overinitial objects, solution sets and the
synthesis of left overadjoints by overinitial search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .adjunction import Adjunction, hom_bijection_report, validate_adjunction
from .errors import ArityViolation, HypothesesUnverified, UnknownObject
from .fincat import FinCat, FunctorData, Morphism, compose_functors, coslice, identity_functor, pair_id
from .overcat import Overcategory, OverfunctorData, default_budget
from .overlimits import (
    DEFAULT_SHAPES,
    NotFound,
    check_universal,
    enumerate_diagrams,
    k_equalizer_report,
    overcompleteness_report,
    overlimit,
    preservation_report,
)
from .overcat import OverDiagram, Overcone, shape


@dataclass
class CommaOvercategory:
    ov: Overcategory
    Q: FunctorData
    Q0: FunctorData
    source: OverfunctorData
    B: str
    parts: dict[str, tuple[str, str]]

    def object_for(self, A: str, a: str) -> str:
        return pair_id(A, a)

    def identity_arity_objects(self) -> list[str]:
        """Comma objects (A, a) with A(a) = 1_{A(B)}."""
        return self.ov.fiber_objects(self.top)

    @property
    def top(self) -> str:
        """The coslice object 1_{A(B)}."""
        cod = self.source.cod
        return cod.base.identity[cod.arity.ob(self.B)]


def comma_overcategory(Fo: OverfunctorData, B: str) -> CommaOvercategory:
    """(B↓F) with arity (A, a) ↦ A(a) into the coslice A(B)/G.

    Object ids are ``(A|a)``; the morphism induced by f: A -> A' out of
    (A, a) has id ``(f|a)``.
    """
    D, E = Fo.dom, Fo.cod
    F = Fo.F
    if not E.total.has_object(B):
        raise UnknownObject(B)
    base, cproj = coslice(E.base, E.arity.ob(B))
    objects, parts = [], {}
    for A in D.total.objects:
        for a in E.total.hom(B, F.ob(A)):
            oid = pair_id(A, a)
            objects.append(oid)
            parts[oid] = (A, a)
    morphisms, mparts = [], {}
    for oid in objects:
        A, a = parts[oid]
        for f in D.total.out_of(A):
            tgt = pair_id(D.total.dst(f), E.total.comp(F.mor(f), a))
            mid = pair_id(f, a)
            morphisms.append(Morphism(mid, oid, tgt))
            mparts[mid] = (f, a)
    identity = {oid: pair_id(D.total.identity[parts[oid][0]], parts[oid][1]) for oid in objects}
    out = {}
    for m in morphisms:
        out.setdefault(m.src, []).append(m)
    compose = {}
    for m in morphisms:
        f, a = mparts[m.id]
        for n in out.get(m.dst, ()):
            g, _ = mparts[n.id]
            compose[n.id, m.id] = pair_id(D.total.comp(g, f), a)
    total = FinCat(objects, morphisms, identity, compose, name=f"({B}|{E.name or 'F'})")
    A_E = E.arity
    arity = FunctorData(
        total,
        base,
        {oid: A_E.mor(parts[oid][1]) for oid in objects},
        {mid: pair_id(A_E.mor(a), A_E.mor(F.mor(f))) for mid, (f, a) in mparts.items()},
    )
    Q = FunctorData(total, D.total, {oid: parts[oid][0] for oid in objects}, {mid: mparts[mid][0] for mid in mparts})
    return CommaOvercategory(Overcategory(total, base, arity, name=total.name), Q, cproj, Fo, B, parts)


# ---------------------------------------------------------------------------
# overinitial objects


@dataclass
class Overinitial:
    obj: str
    lifts: dict[tuple[str, str], str]

    def __bool__(self):
        return True

    def to_json(self):
        return {
            "status": "found",
            "object": self.obj,
            "lifts": [{"target": d, "b": b, "lift": x} for (d, b), x in sorted(self.lifts.items())],
        }


def _lift_counts(ov: Overcategory, z: str) -> dict[tuple[str, str], list[str]]:
    index: dict[tuple[str, str], list[str]] = {}
    for f in ov.total.out_of(z):
        index.setdefault((ov.total.dst(f), ov.arity.mor(f)), []).append(f)
    return index


def find_overinitial(ov: Overcategory, G0: str):
    """Object 0 over G0 with exactly one lift over every b: G0 -> A(d).

    Candidates are tried in sorted id order; on failure the witness
    belongs to the candidate with the fewest defects."""
    T, A, base = ov.total, ov.arity, ov.base
    candidates = sorted(ov.fiber_objects(G0))
    if not candidates:
        return NotFound("empty_fiber", {"G0": G0})
    best = None
    for z in candidates:
        index = _lift_counts(ov, z)
        defects = []
        lifts = {}
        for d in T.objects:
            for b in base.hom(G0, A.ob(d)):
                found = index.get((d, b), [])
                if len(found) == 1:
                    lifts[d, b] = found[0]
                else:
                    defects.append({"target": d, "b": b, "lifts": list(found)})
        if not defects:
            return Overinitial(z, lifts)
        if best is None or len(defects) < best[0]:
            best = (len(defects), z, defects[0])
    _, z, defect = best
    return NotFound("lifts", {"G0": G0, "candidate": z, **defect})


def is_initial(cat: FinCat, z: str) -> bool:
    return all(len(cat.hom(z, d)) == 1 for d in cat.objects)


def is_weakly_overinitial_family(ov: Overcategory, G0: str, family) -> tuple[bool, dict | None]:
    """Every (d, h: G0 -> A(d)) receives some k_i -> d over h."""
    T, A, base = ov.total, ov.arity, ov.base
    reach = set()
    for k in family:
        if A.ob(k) != G0:
            raise ArityViolation(f"family member {k!r} is not over {G0!r}")
        reach |= set(_lift_counts(ov, k))
    for d in T.objects:
        for h in base.hom(G0, A.ob(d)):
            if (d, h) not in reach:
                return False, {"target": d, "b": h}
    return True, None


def hypotheses_report(ov: Overcategory, budget: int | None = None, shapes=DEFAULT_SHAPES) -> dict:
    comp = overcompleteness_report(ov, budget, shapes, colimits=False)
    keq = k_equalizer_report(ov)
    return {
        "budget": comp["budget"],
        "overcomplete": comp["limits"]["complete"] and not comp["limits"]["budget_limited"],
        "k_equalizers": keq["ok"],
        "completeness": comp,
        "k_equalizer_report": keq,
    }


def check_overinitial_lemma(ov: Overcategory, G0: str, family=None, budget: int | None = None, require_hypotheses: bool = True, shapes=DEFAULT_SHAPES) -> dict:
    """Weakly overinitial family over G0 exists iff an overinitial object
    over G0 exists, under in-budget overcompleteness and K-equalizers."""
    hyp = None
    if require_hypotheses:
        hyp = hypotheses_report(ov, budget, shapes)
        if not (hyp["overcomplete"] and hyp["k_equalizers"]):
            raise HypothesesUnverified("overcompleteness or K-equalizers fail within budget", hyp)
    fiber_objs = ov.fiber_objects(G0)
    family = list(fiber_objs if family is None else family)
    given, given_witness = is_weakly_overinitial_family(ov, G0, family)
    some, _ = is_weakly_overinitial_family(ov, G0, fiber_objs)
    found = find_overinitial(ov, G0)
    directions = []
    if given:
        directions.append("family=>overinitial")
    if found:
        directions.append("overinitial=>family")
        singleton, _ = is_weakly_overinitial_family(ov, G0, [found.obj])
    else:
        singleton = True
    holds = (some == bool(found)) and (not given or bool(found)) and singleton
    return {
        "G0": G0,
        "family": family,
        "family_weakly_overinitial": given,
        "family_witness": given_witness,
        "weak_family_exists": some,
        "overinitial": found.obj if found else None,
        "directions": directions,
        "holds": holds,
        "hypotheses_checked": require_hypotheses,
        "budget": hyp["budget"] if hyp else None,
    }


# ---------------------------------------------------------------------------
# solution sets


@dataclass
class SolutionSetResult:
    ok: bool
    certificate: dict[str, tuple[int, str]]
    witness: str | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "certificate": {k: [i, a] for k, (i, a) in sorted(self.certificate.items())},
            "witness": self.witness,
        }


def solution_set_check(Fo: OverfunctorData, B: str, candidate: list[tuple[str, str]]) -> SolutionSetResult:
    """Every comma object (A, b) factors as F(a_i)∘b_i = b for some i."""
    D, E = Fo.dom, Fo.cod
    idAB = E.base.identity[E.arity.ob(B)]
    for A_i, b_i in candidate:
        if E.arity.mor(b_i) != idAB:
            raise ArityViolation(f"A({b_i}) is not the identity of A({B})")
    cert = {}
    for A in D.total.objects:
        for b in E.total.hom(B, Fo.F.ob(A)):
            hit = None
            for i, (A_i, b_i) in enumerate(candidate):
                for a in D.total.hom(A_i, A):
                    if E.total.comp(Fo.F.mor(a), b_i) == b:
                        hit = (i, a)
                        break
                if hit:
                    break
            if hit is None:
                return SolutionSetResult(False, cert, pair_id(A, b))
            cert[pair_id(A, b)] = hit
    return SolutionSetResult(True, cert)


def identity_arity_comma_objects(Fo: OverfunctorData, B: str) -> list[tuple[str, str]]:
    E = Fo.cod
    idAB = E.base.identity[E.arity.ob(B)]
    return [
        (A, a)
        for A in Fo.dom.total.objects
        for a in E.total.hom(B, Fo.F.ob(A))
        if E.arity.mor(a) == idAB
    ]


def minimal_solution_set(Fo: OverfunctorData, B: str):
    """Smallest solution set among identity-arity comma objects (first in
    canonical order among those of minimal size), or None."""
    pool = sorted(identity_arity_comma_objects(Fo, B))
    for size in range(len(pool) + 1):
        for family in itertools.combinations(pool, size):
            if solution_set_check(Fo, B, list(family)):
                return list(family)
    return None


# ---------------------------------------------------------------------------
# Freyd synthesis


def synthesize_left_overadjoint(Fo: OverfunctorData, budget: int | None = None):
    """Left overadjoint of ``Fo`` built from overinitial objects of (B↓F)
    in the fiber over 1_{A(B)}; returns an :class:`Adjunction` whose
    triangles and hom-bijection have been checked, or NotFound."""
    D, E = Fo.dom, Fo.cod
    F = Fo.F
    R, eta = {}, {}
    for B in E.total.objects:
        comma = comma_overcategory(Fo, B)
        found = find_overinitial(comma.ov, comma.top)
        if not found:
            witness = dict(found.witness)
            witness["B"] = B
            witness["hom_counts"] = _comma_hom_counts(comma)
            return NotFound("no_overinitial", witness)
        A, v = comma.parts[found.obj]
        R[B], eta[B] = A, v
    omap = dict(R)
    mmap = {}
    for g in E.total.morphisms:
        B, B2 = g.src, g.dst
        target = E.total.comp(eta[B2], g.id)
        lifts = [f for f in D.total.hom(R[B], R[B2]) if E.total.comp(F.mor(f), eta[B]) == target]
        if len(lifts) != 1:
            return NotFound("morphism_not_unique", {"morphism": g.id, "lifts": lifts})
        mmap[g.id] = lifts[0]
    L = OverfunctorData(E, D, FunctorData(E.total, D.total, omap, mmap), identity_functor(E.base))
    counit = {}
    for A in D.total.objects:
        FA = F.ob(A)
        lifts = [f for f in D.total.hom(R[FA], A) if E.total.comp(F.mor(f), eta[FA]) == E.total.identity[FA]]
        if len(lifts) != 1:
            return NotFound("counit_not_unique", {"object": A, "lifts": lifts})
        counit[A] = lifts[0]
    adj = Adjunction(L, Fo, dict(eta), counit)
    rep = validate_adjunction(adj)
    hom = hom_bijection_report(adj)
    adj.checks = {
        "triangles": rep.ok,
        "validation": rep.to_json(),
        "hom_bijection": hom["bijective"],
        "naturality": hom["natural_in_source"] and hom["natural_in_target"],
    }
    return adj


def _comma_hom_counts(comma: CommaOvercategory) -> list[dict]:
    """For each object in the identity-arity fiber, how many arrows it has
    to each comma object (an initial object needs exactly one each)."""
    T = comma.ov.total
    rows = []
    for z in sorted(comma.ov.fiber_objects(comma.top)):
        rows.append({"candidate": z, "counts": {d: len(T.hom(z, d)) for d in T.objects}})
    return rows


def freyd_hypotheses_report(Fo: OverfunctorData, budget: int | None = None, shapes=DEFAULT_SHAPES) -> dict:
    """Domain overcompleteness and K-equalizers, preservation of both by F,
    and the solution set condition at every B; all budget-relative."""
    budget = default_budget() if budget is None else budget
    hyp = hypotheses_report(Fo.dom, budget, shapes)
    pres = preservation_report(Fo, shapes, budget)
    solution = {}
    for B in Fo.cod.total.objects:
        fam = identity_arity_comma_objects(Fo, B)
        solution[B] = bool(solution_set_check(Fo, B, fam))
    return {
        "budget": budget,
        "domain_overcomplete": hyp["overcomplete"],
        "domain_k_equalizers": hyp["k_equalizers"],
        "domain_shapes": {k: v["status"] for k, v in hyp["completeness"]["limits"]["shapes"].items()},
        "preserves_overlimits": pres["preserves_overlimits"],
        "preserves_k_equalizers": pres["preserves_k_equalizers"],
        "preservation": pres,
        "solution_sets": solution,
        "all_green": hyp["overcomplete"] and hyp["k_equalizers"] and pres["preserves_overlimits"]
        and pres["preserves_k_equalizers"] and all(solution.values()),
    }


def creation_report(comma: CommaOvercategory, shapes=("empty", "terminal", "discrete2", "parallel"), budget: int | None = None) -> dict:
    """Q maps every in-budget overlimit of the comma to an overlimit of the
    source; re-derived independently on the source side."""
    budget = default_budget() if budget is None else budget
    src = comma.source.dom
    Q = comma.Q
    out = {"checked": 0, "ok": True, "witness": None}
    for name in shapes:
        shp = shape(name)
        for d in enumerate_diagrams(comma.ov, shp, budget=budget):
            lim = overlimit(comma.ov, d)
            if not lim:
                continue
            out["checked"] += 1
            objs = tuple(shp.objects)
            if not objs:
                continue
            img = _q_image(comma, d)
            B0 = img.B
            cone = Overcone(Q.ob(lim.apex), src.base.identity[B0], {c: Q.mor(k) for c, k in lim.cone.components.items()}, objs)
            ok, _, _ = check_universal(src, img, cone)
            if not ok:
                out["ok"] = False
                out["witness"] = out["witness"] or {"diagram": d.id}
    return out


def _q_image(comma: CommaOvercategory, d) -> OverDiagram:
    src = comma.source.dom
    first = d.shape.objects[0]
    return OverDiagram(d.shape, compose_functors(comma.Q, d.F), src.arity.ob(comma.Q.ob(d.F.ob(first))))
