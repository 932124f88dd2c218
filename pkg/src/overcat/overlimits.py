"""Overlimits, overcolimits, K-(co)equalizers and split overforks, all
found by exhaustive search and certified against the complete list of
overcones."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import AritiesDiffer, NotInOneFiber, NotParallel, ShapeTooLarge
from .fincat import FunctorData, compose_functors
from .parallel import parallel_map
from .overcat import (
    OverDiagram,
    Overcategory,
    Overcone,
    OverfunctorData,
    default_budget,
    enumerate_diagrams,
    enumerate_overcones,
    make_diagram,
    nonidentity,
    opposite_diagram,
    opposite_overcategory,
    shape,
)

PRODUCT_SHAPES = ("empty", "terminal", "discrete2", "discrete3")
EQUALIZER_SHAPES = ("parallel",)
CONNECTED_SHAPES = ("span", "cospan", "chain2", "chain3")
DEFAULT_SHAPES = PRODUCT_SHAPES + EQUALIZER_SHAPES + CONNECTED_SHAPES


@dataclass
class UniversalOvercone:
    diagram: OverDiagram
    cone: Overcone
    mediators: dict[tuple, str]
    dual: bool = False

    @property
    def apex(self) -> str:
        return self.cone.apex

    def __bool__(self):
        return True

    def to_json(self):
        return {
            "status": "found",
            "kind": "overcocone" if self.dual else "overcone",
            "diagram": self.diagram.id,
            "apex": self.cone.apex,
            "cone": self.cone.to_json(),
            "mediators": [
                {"apex": k[0], "b": k[1], "components": list(k[2]), "mediator": f}
                for k, f in sorted(self.mediators.items())
            ],
        }


@dataclass
class NotFound:
    reason: str
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def to_json(self):
        return {"status": "not_found", "reason": self.reason, "witness": self.witness}


def _mediator_index(ov: Overcategory, apex: str, comps: tuple[str, ...]) -> dict:
    """Map (y, A(f), (τ_c∘f)_c) to the list of f: y -> apex."""
    total, A = ov.total, ov.arity
    index: dict[tuple, list[str]] = {}
    for y in total.objects:
        for f in total.hom(y, apex):
            key = (y, A.mor(f), tuple(total.comp(t, f) for t in comps))
            index.setdefault(key, []).append(f)
    return index


def check_universal(ov: Overcategory, diag: OverDiagram, cone: Overcone, cones: list[Overcone] | None = None):
    """Return ``(ok, mediators, witness)`` for a candidate with b = 1_B."""
    cones = enumerate_overcones(ov, diag) if cones is None else cones
    objs = tuple(diag.shape.objects)
    comps = tuple(cone.components[c] for c in objs)
    index = _mediator_index(ov, cone.apex, comps)
    mediators = {}
    for sigma in cones:
        found = index.get(sigma.key(), [])
        if len(found) != 1:
            return False, {}, {"candidate": cone.to_json(), "cone": sigma.to_json(), "mediators": list(found)}
        mediators[sigma.key()] = found[0]
    return True, mediators, None


def overlimit(ov: Overcategory, diag: OverDiagram, cones: list[Overcone] | None = None):
    """Universal overcone of (F, B) with apex in the fiber over B.

    Among several universal candidates (isomorphic apexes) the first in
    canonical order (apex id, component ids) is returned.
    """
    cones = enumerate_overcones(ov, diag) if cones is None else cones
    idB = ov.base.identity[diag.B]
    candidates = [c for c in cones if c.b == idB]
    if not candidates:
        return NotFound("no_cone", {"diagram": diag.id})
    first_witness = None
    for cand in candidates:
        ok, mediators, witness = check_universal(ov, diag, cand, cones)
        if ok:
            return UniversalOvercone(diag, cand, mediators)
        if first_witness is None:
            first_witness = witness
    return NotFound("mediators", dict(first_witness, diagram=diag.id))


def overcolimit(ov: Overcategory, diag: OverDiagram):
    """Dual of :func:`overlimit`, computed in the opposite overcategory."""
    op = opposite_overcategory(ov)
    res = overlimit(op, opposite_diagram(diag, op))
    if isinstance(res, UniversalOvercone):
        return UniversalOvercone(diag, res.cone, res.mediators, dual=True)
    return res


def verify_overlimit(ov: Overcategory, diag: OverDiagram, result: UniversalOvercone) -> bool:
    """Independent re-verification by brute force: regenerate every
    overcone from all tuples of morphisms and count mediators directly."""
    if result.dual:
        op = opposite_overcategory(ov)
        return verify_overlimit(op, opposite_diagram(diag, op), UniversalOvercone(opposite_diagram(diag, op), result.cone, result.mediators))
    total, A, base = ov.total, ov.arity, ov.base
    cone = result.cone
    if A.ob(cone.apex) != diag.B or cone.b != base.identity[diag.B]:
        return False
    objs = list(diag.shape.objects)
    if not _is_cone(ov, diag, cone.apex, cone.b, cone.components):
        return False
    for y in total.objects:
        for b in base.hom(A.ob(y), diag.B):
            for family in itertools.product(total.out_of(y), repeat=len(objs)):
                sigma = dict(zip(objs, family))
                if not _is_cone(ov, diag, y, b, sigma):
                    continue
                count = 0
                for f in total.hom(y, cone.apex):
                    if A.mor(f) == b and all(total.comp(cone.components[c], f) == sigma[c] for c in objs):
                        count += 1
                if count != 1:
                    return False
    return True


def _is_cone(ov, diag, y, b, sigma) -> bool:
    total, A = ov.total, ov.arity
    for c, f in sigma.items():
        if total.src(f) != y or total.dst(f) != diag.F.ob(c) or A.mor(f) != b:
            return False
    for m in diag.shape.morphisms:
        if total.comp(diag.F.mor(m.id), sigma[m.src]) != sigma[m.dst]:
            return False
    return True


# ---------------------------------------------------------------------------
# K-equalizers


@dataclass
class KEqualizer:
    f: str
    g: str
    e: str
    mediators: dict[tuple[str, str], str]
    dual: bool = False

    def __bool__(self):
        return True

    def to_json(self):
        return {
            "status": "found",
            "kind": "k_coequalizer" if self.dual else "k_equalizer",
            "pair": [self.f, self.g],
            "arrow": self.e,
            "mediators": [{"source": z, "fork": h, "mediator": k} for (z, h), k in sorted(self.mediators.items())],
        }


def k_equalizer(ov: Overcategory, f: str, g: str):
    """Equalizer e of f, g in the total category with A(e) an identity."""
    T, A, base = ov.total, ov.arity, ov.base
    if T.src(f) != T.src(g) or T.dst(f) != T.dst(g):
        raise NotParallel(f"{f} and {g} are not parallel")
    if A.mor(f) != A.mor(g):
        raise AritiesDiffer(f"A({f}) != A({g})")
    a = T.src(f)
    idA = base.identity[A.ob(a)]
    forks = [(z, h) for z in T.objects for h in T.hom(z, a) if T.comp(f, h) == T.comp(g, h)]
    candidates = sorted(
        (T.src(e), e)
        for c in ov.fiber_objects(A.ob(a))
        for e in T.hom(c, a)
        if A.mor(e) == idA and T.comp(f, e) == T.comp(g, e)
    )
    if not candidates:
        return NotFound("no_fork", {"pair": [f, g]})
    first = None
    for c, e in candidates:
        index: dict[tuple[str, str], list[str]] = {}
        for z in T.objects:
            for k in T.hom(z, c):
                index.setdefault((z, T.comp(e, k)), []).append(k)
        mediators = {}
        for z, h in forks:
            found = index.get((z, h), [])
            if len(found) != 1:
                if first is None:
                    first = {"candidate": e, "fork": h, "mediators": found}
                break
            mediators[z, h] = found[0]
        else:
            return KEqualizer(f, g, e, mediators)
    return NotFound("mediators", dict(first, pair=[f, g]))


def k_coequalizer(ov: Overcategory, f: str, g: str):
    res = k_equalizer(opposite_overcategory(ov), f, g)
    if isinstance(res, KEqualizer):
        res.dual = True
    return res


def k_equalizer_report(ov: Overcategory, dual: bool = False) -> dict:
    """Check every parallel pair with equal arities."""
    T, A = ov.total, ov.arity
    pairs = 0
    for x in T.objects:
        for y in T.objects:
            hom = T.hom(x, y)
            for f, g in itertools.combinations_with_replacement(hom, 2):
                if A.mor(f) != A.mor(g):
                    continue
                pairs += 1
                res = k_coequalizer(ov, f, g) if dual else k_equalizer(ov, f, g)
                if not res:
                    return {"ok": False, "pairs_checked": pairs, "witness": {"pair": [f, g], **res.to_json()}}
    return {"ok": True, "pairs_checked": pairs, "witness": None}


# ---------------------------------------------------------------------------
# split overforks


def parallel_diagram(ov: Overcategory, f: str, g: str) -> OverDiagram:
    T = ov.total
    return make_diagram(ov, shape("parallel"), {"s": T.src(f), "t": T.dst(f)}, {"u": f, "v": g})


def _opposite(ov: Overcategory) -> Overcategory:
    """Opposite overcategory, memoized on the instance (repeated dual
    checks against one large overcategory are common)."""
    op = getattr(ov, "_opposite_cache", None)
    if op is None:
        op = opposite_overcategory(ov)
        ov._opposite_cache = op
    return op


def is_overcoequalizer(ov: Overcategory, f: str, g: str, h: str) -> bool:
    """Whether h (vertical, out of dst f) is a universal overcocone of (f, g)."""
    T, A, base = ov.total, ov.arity, ov.base
    B = A.ob(T.src(f))
    idB = base.identity[B]
    if any(A.mor(k) != idB for k in (f, g, h)):
        return False
    if T.comp(h, f) != T.comp(h, g):
        return False
    diag = parallel_diagram(ov, f, g)
    op = _opposite(ov)
    dop = opposite_diagram(diag, op)
    cone = Overcone(T.dst(h), idB, {"s": T.comp(h, f), "t": h}, tuple(dop.shape.objects))
    ok, _, _ = check_universal(op, dop, cone)
    return ok


@dataclass
class SplitForkVerdict:
    is_split: bool
    is_overcoequalizer: bool
    preserved: dict[str, bool]

    def to_json(self):
        return {"is_split": self.is_split, "is_overcoequalizer": self.is_overcoequalizer, "preserved": dict(self.preserved)}


def check_split_overfork(ov: Overcategory, f, g, h, s, t, library: dict[str, OverfunctorData] | None = None) -> SplitForkVerdict:
    """f, g: a -> b, h: b -> c, s: c -> b, t: b -> a, all in one fiber."""
    T, A, base = ov.total, ov.arity, ov.base
    arities = {A.mor(k) for k in (f, g, h, s, t)}
    if len(arities) != 1 or not base.is_identity(next(iter(arities))):
        raise NotInOneFiber("a split overfork must lie in a single fiber")
    a, b, c = T.src(f), T.dst(f), T.dst(h)
    typed = (
        T.src(g) == a and T.dst(g) == b and T.src(h) == b
        and T.src(s) == c and T.dst(s) == b and T.src(t) == b and T.dst(t) == a
    )
    is_split = typed and (
        T.comp(h, f) == T.comp(h, g)
        and T.comp(h, s) == T.identity[c]
        and T.comp(f, t) == T.identity[b]
        and T.comp(g, t) == T.comp(s, h)
    )
    coeq = typed and is_overcoequalizer(ov, f, g, h)
    preserved = {}
    for name, Fo in (library or {}).items():
        F = Fo.F
        preserved[name] = is_overcoequalizer(Fo.cod, F.mor(f), F.mor(g), F.mor(h))
    return SplitForkVerdict(is_split, coeq, preserved)


# ---------------------------------------------------------------------------
# completeness


def _product_shape(n: int):
    return shape({0: "empty", 1: "terminal"}.get(n, f"discrete{n}"))


def _vertical_mediator(ov: Overcategory, prod: UniversalOvercone, targets: dict[str, str]) -> str | None:
    """The unique vertical f into the product apex with π_i∘f = targets[i]."""
    T = ov.total
    src = T.src(next(iter(targets.values())))
    found = [
        f
        for f in T.hom(src, prod.apex)
        if ov.vertical(f) and all(T.comp(prod.cone.components[i], f) == t for i, t in targets.items())
    ]
    return found[0] if len(found) == 1 else None


def limit_via_products_and_equalizers(ov: Overcategory, diag: OverDiagram):
    """Build lim D as the equalizer of the two maps Π F(c) ⇉ Π F(cod u)."""
    shp = diag.shape
    objs = list(shp.objects)
    gens = nonidentity(shp)
    if len(objs) > 3 or len(gens) > 3:
        raise ShapeTooLarge(shp.name or "shape", 3)
    P_diag = make_diagram(ov, _product_shape(len(objs)), {str(i): diag.F.ob(c) for i, c in enumerate(objs)}, B=diag.B)
    P = overlimit(ov, P_diag)
    if not P:
        return NotFound("no_product", {"diagram": P_diag.id})
    if not gens:
        cone = Overcone(P.apex, P.cone.b, {c: P.cone.components[str(i)] for i, c in enumerate(objs)}, tuple(objs))
        return cone
    Q_diag = make_diagram(ov, _product_shape(len(gens)), {str(j): diag.F.ob(shp.dst(u)) for j, u in enumerate(gens)}, B=diag.B)
    Q = overlimit(ov, Q_diag)
    if not Q:
        return NotFound("no_product", {"diagram": Q_diag.id})
    T = ov.total
    pi = {c: P.cone.components[str(i)] for i, c in enumerate(objs)}
    s = _vertical_mediator(ov, Q, {str(j): T.comp(diag.F.mor(u), pi[shp.src(u)]) for j, u in enumerate(gens)})
    t = _vertical_mediator(ov, Q, {str(j): pi[shp.dst(u)] for j, u in enumerate(gens)})
    if s is None or t is None:
        return NotFound("no_mediator", {})
    E = overlimit(ov, parallel_diagram(ov, s, t))
    if not E:
        return NotFound("no_equalizer", {"pair": [s, t]})
    e = E.cone.components["s"]
    return Overcone(E.apex, E.cone.b, {c: T.comp(pi[c], e) for c in objs}, tuple(objs))


def _fiber_isomorphic(ov: Overcategory, x: str, y: str) -> bool:
    return any(ov.vertical(f) and ov.total.is_iso(f) for f in ov.total.hom(x, y))


def _shape_section(ov: Overcategory, name: str, budget) -> tuple[dict, list]:
    shp = shape(name)
    try:
        diagrams = enumerate_diagrams(ov, shp, budget=budget)
    except ShapeTooLarge as exc:
        return {"status": "budget", "budget": exc.budget}, []
    failing = None
    results = {}
    for d in diagrams:
        res = overlimit(ov, d)
        results[d.id] = res
        if not res and failing is None:
            failing = d.id
    info = {"status": "ok" if failing is None else "fail", "diagrams": len(diagrams), "failing": failing}
    constructions = []
    if name in CONNECTED_SHAPES + EQUALIZER_SHAPES:
        for d in diagrams:
            direct = results[d.id]
            built = limit_via_products_and_equalizers(ov, d)
            if not built and built.reason == "no_product":
                agree = None
            elif not built and not direct:
                agree = True
            elif not built or not direct:
                agree = False
            else:
                ok, _, _ = check_universal(ov, d, built)
                agree = ok and _fiber_isomorphic(ov, built.apex, direct.apex)
            constructions.append({"shape": name, "diagram": d.id, "direct": bool(direct), "via": bool(built), "agree": agree})
    return info, constructions


def _limit_section(ov: Overcategory, shapes, budget, jobs: int = 1) -> dict:
    section = {"shapes": {}, "constructions": []}
    parts = parallel_map(_shape_section, [(ov, name, budget) for name in shapes], jobs)
    for name, (info, constructions) in zip(shapes, parts):
        section["shapes"][name] = info
        section["constructions"].extend(constructions)

    def ok(names):
        present = [section["shapes"][n] for n in names if n in section["shapes"]]
        return all(p["status"] == "ok" for p in present)

    section["products"] = ok([n for n in PRODUCT_SHAPES if n in shapes])
    section["equalizers"] = ok([n for n in EQUALIZER_SHAPES if n in shapes])
    section["complete"] = ok(shapes)
    section["budget_limited"] = any(v["status"] == "budget" for v in section["shapes"].values())
    section["equivalence"] = section["complete"] == (section["products"] and section["equalizers"])
    section["constructions_agree"] = all(c["agree"] is not False for c in section["constructions"])
    return section


def overcompleteness_report(ov: Overcategory, budget: int | None = None, shapes=DEFAULT_SHAPES, colimits: bool = True,
                            jobs: int = 1) -> dict:
    """Budget-relative overcompleteness (and overcocompleteness).

    For every supported shape each fiberwise diagram is tried; the
    equivalence with "overproducts + overequalizers" is checked both at the
    level of verdicts and by rebuilding every connected limit from products
    and equalizers and comparing apexes.
    """
    budget = default_budget() if budget is None else budget
    shapes = list(shapes)
    report = {"budget": budget, "shapes": shapes, "limits": _limit_section(ov, shapes, budget, jobs)}
    if colimits:
        report["colimits"] = _limit_section(opposite_overcategory(ov), shapes, budget, jobs)
    return report


def first_failing(report: dict, section: str = "limits") -> tuple[str, str] | None:
    for name, info in report[section]["shapes"].items():
        if info.get("status") == "fail":
            return name, info["failing"]
    return None


# ---------------------------------------------------------------------------
# preservation by an overfunctor


def image_diagram(Fo: OverfunctorData, diag: OverDiagram) -> OverDiagram:
    return OverDiagram(diag.shape, compose_functors(Fo.F, diag.F), Fo.F0.ob(diag.B))


def preservation_report(Fo: OverfunctorData, shapes=DEFAULT_SHAPES, budget: int | None = None) -> dict:
    """For every in-budget overlimit in the domain, is its image universal?
    Double computation: directly, and by comparing with an independently
    computed overlimit in the codomain."""
    budget = default_budget() if budget is None else budget
    out = {"budget": budget, "shapes": {}, "k_equalizers": None}
    F = Fo.F
    for name in shapes:
        shp = shape(name)
        try:
            diagrams = enumerate_diagrams(Fo.dom, shp, budget=budget)
        except ShapeTooLarge as exc:
            out["shapes"][name] = {"status": "budget", "budget": exc.budget}
            continue
        failing, checked, disagree = None, 0, []
        for d in diagrams:
            lim = overlimit(Fo.dom, d)
            if not lim:
                continue
            checked += 1
            img = image_diagram(Fo, d)
            cone = Overcone(
                F.ob(lim.apex),
                Fo.cod.base.identity[img.B],
                {c: F.mor(k) for c, k in lim.cone.components.items()},
                tuple(shp.objects),
            )
            ok, _, _ = check_universal(Fo.cod, img, cone)
            other = overlimit(Fo.cod, img)
            second = bool(other) and _fiber_isomorphic(Fo.cod, cone.apex, other.apex) and ok
            if ok != second:
                disagree.append(d.id)
            if not ok and failing is None:
                failing = d.id
        out["shapes"][name] = {"status": "ok" if failing is None else "fail", "checked": checked, "failing": failing, "disagree": disagree}
    out["k_equalizers"] = _k_preservation(Fo)
    out["preserves_overlimits"] = all(v["status"] == "ok" for v in out["shapes"].values())
    out["preserves_k_equalizers"] = out["k_equalizers"]["ok"]
    return out


def _k_preservation(Fo: OverfunctorData) -> dict:
    T, A = Fo.dom.total, Fo.dom.arity
    F = Fo.F
    checked = 0
    for x in T.objects:
        for y in T.objects:
            for f, g in itertools.combinations_with_replacement(T.hom(x, y), 2):
                if A.mor(f) != A.mor(g):
                    continue
                res = k_equalizer(Fo.dom, f, g)
                if not res:
                    continue
                checked += 1
                Ff, Fg, Fe = F.mor(f), F.mor(g), F.mor(res.e)
                if not _is_equalizer(Fo.cod, Ff, Fg, Fe):
                    return {"ok": False, "checked": checked, "witness": {"pair": [f, g], "equalizer": res.e}}
    return {"ok": True, "checked": checked, "witness": None}


def _is_equalizer(ov: Overcategory, f: str, g: str, e: str) -> bool:
    T = ov.total
    if not ov.vertical(e) or T.comp(f, e) != T.comp(g, e):
        return False
    a, c = T.src(f), T.src(e)
    for z in T.objects:
        for h in T.hom(z, a):
            if T.comp(f, h) != T.comp(g, h):
                continue
            if sum(1 for k in T.hom(z, c) if T.comp(e, k) == h) != 1:
                return False
    return True


def overfunctor_image(Fo: OverfunctorData, f: str) -> str:
    return Fo.F.mor(f)
