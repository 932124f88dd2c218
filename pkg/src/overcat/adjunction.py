"""Overadjunctions F ⊣ G given by unit and counit tables."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidAdjunction
from .fincat import NatTransData, ValidationReport, compose_functors, identity_functor, validate_nat_trans
from .overcat import OverfunctorData, validate_overfunctor


@dataclass
class Adjunction:
    """``left: C -> D`` is left adjoint to ``right: D -> C``.

    ``unit[c]: c -> right(left(c))`` in C and
    ``counit[d]: left(right(d)) -> d`` in D.
    """
    left: OverfunctorData
    right: OverfunctorData
    unit: dict[str, str]
    counit: dict[str, str]
    name: str = ""

    @property
    def C(self):
        return self.left.dom

    @property
    def D(self):
        return self.left.cod

    def to_json(self):
        return {
            "left": {"object_map": dict(self.left.F.object_map), "morphism_map": dict(self.left.F.morphism_map)},
            "right": {"object_map": dict(self.right.F.object_map), "morphism_map": dict(self.right.F.morphism_map)},
            "unit": dict(self.unit),
            "counit": dict(self.counit),
        }


def validate_adjunction(adj: Adjunction) -> ValidationReport:
    """Overfunctor squares, vertical natural unit/counit, triangle identities."""
    rep = ValidationReport()
    L, R = adj.left, adj.right
    rep.extend(validate_overfunctor(L), "left.")
    rep.extend(validate_overfunctor(R), "right.")
    if not rep.ok:
        return rep
    C, D = adj.C, adj.D
    if set(adj.unit) != set(C.total.objects) or set(adj.counit) != set(D.total.objects):
        rep.add("components", "unit/counit do not cover the objects")
        return rep
    RL = compose_functors(R.F, L.F)
    LR = compose_functors(L.F, R.F)
    rep.extend(validate_nat_trans(NatTransData(identity_functor(C.total), RL, adj.unit)), "unit.")
    rep.extend(validate_nat_trans(NatTransData(LR, identity_functor(D.total), adj.counit)), "counit.")
    if not rep.ok:
        return rep
    for c, f in adj.unit.items():
        if not C.vertical(f):
            rep.add("unit.vertical", c)
    for d, f in adj.counit.items():
        if not D.vertical(f):
            rep.add("counit.vertical", d)
    for c in C.total.objects:
        Lc = L.F.ob(c)
        if D.total.comp(adj.counit[Lc], L.F.mor(adj.unit[c])) != D.total.identity[Lc]:
            rep.add("triangle_left", c)
    for d in D.total.objects:
        Rd = R.F.ob(d)
        if C.total.comp(R.F.mor(adj.counit[d]), adj.unit[Rd]) != C.total.identity[Rd]:
            rep.add("triangle_right", d)
    return rep


def require_valid(adj: Adjunction) -> None:
    rep = validate_adjunction(adj)
    if not rep.ok:
        raise InvalidAdjunction(f"invalid adjunction: {rep.violations[0]}", rep.violations)


def hom_bijection_report(adj: Adjunction) -> dict:
    """Check φ: D(Lc, d) -> C(c, Rd), f ↦ R(f)∘η_c, is a bijection for
    every pair, and natural in c and in d separately."""
    C, D = adj.C.total, adj.D.total
    L, R = adj.left.F, adj.right.F
    out = {"pairs": 0, "bijective": True, "natural_in_source": True, "natural_in_target": True, "witness": None}

    def phi(c, f):
        return C.comp(R.mor(f), adj.unit[c])

    for c in C.objects:
        for d in D.objects:
            out["pairs"] += 1
            left = D.hom(L.ob(c), d)
            images = [phi(c, f) for f in left]
            if len(set(images)) != len(images) or set(images) != set(C.hom(c, R.ob(d))):
                out["bijective"] = False
                out["witness"] = out["witness"] or {"law": "bijective", "source": c, "target": d}
    for g in C.morphisms:
        c2, c = g.src, g.dst
        for d in D.objects:
            for f in D.hom(L.ob(c), d):
                if phi(c2, D.comp(f, L.mor(g.id))) != C.comp(phi(c, f), g.id):
                    out["natural_in_source"] = False
                    out["witness"] = out["witness"] or {"law": "natural_in_source", "morphism": g.id, "arrow": f}
    for h in D.morphisms:
        d, d2 = h.src, h.dst
        for c in C.objects:
            for f in D.hom(L.ob(c), d):
                if phi(c, D.comp(h.id, f)) != C.comp(R.mor(h.id), phi(c, f)):
                    out["natural_in_target"] = False
                    out["witness"] = out["witness"] or {"law": "natural_in_target", "morphism": h.id, "arrow": f}
    out["ok"] = out["bijective"] and out["natural_in_source"] and out["natural_in_target"]
    return out
