"""Overcategories: a total category with an arity functor into a base.

Provides fibers (over objects and over morphisms), the cotensor E^(C) of
fiberwise C-shaped diagrams, the diagonal overfunctor and exhaustive
enumeration of overcones.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .errors import InvalidArity, ShapeTooLarge, UnknownTarget
from .fincat import (
    FinCat,
    FunctorData,
    Morphism,
    NatTransData,
    ValidationReport,
    chain,
    constant_functor,
    discrete,
    empty_category,
    identity_functor,
    opposite,
    opposite_functor,
    pair_id,
    poset,
    terminal_category,
    validate_category,
    validate_functor,
)

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    return int(os.environ.get("OVERCAT_BUDGET", DEFAULT_BUDGET))


@dataclass
class Overcategory:
    total: FinCat
    base: FinCat
    arity: FunctorData
    name: str = ""

    def A(self, x: str) -> str:
        """Arity of an object or a morphism."""
        return self.arity(x)

    def fiber_objects(self, B: str) -> list[str]:
        return [x for x in self.total.objects if self.arity.ob(x) == B]

    def hom_over(self, x: str, y: str, b: str) -> list[str]:
        return [f for f in self.total.hom(x, y) if self.arity.mor(f) == b]

    def vertical(self, f: str) -> bool:
        return self.base.is_identity(self.arity.mor(f))

    def __repr__(self):
        return f"<Overcategory {self.name or ''} total={self.total!r} base={self.base!r}>"


@dataclass
class OverfunctorData:
    """(F, F0) with A'∘F = F0∘A; ``dom``/``cod`` are the overcategories."""
    dom: Overcategory
    cod: Overcategory
    F: FunctorData
    F0: FunctorData


def make_overcategory(total: FinCat, base: FinCat, arity: FunctorData, name: str = "") -> Overcategory:
    rep = ValidationReport()
    rep.extend(validate_category(total), "total.")
    rep.extend(validate_category(base), "base.")
    if arity.dom is not total and arity.dom != total:
        raise InvalidArity("arity domain is not the total category")
    if arity.cod is not base and arity.cod != base:
        raise InvalidArity("arity codomain is not the base category")
    rep.extend(validate_functor(arity), "arity.")
    if not rep.ok:
        raise InvalidArity(f"invalid overcategory: {rep.violations[0]}", rep)
    return Overcategory(total, base, arity, name)


def validate_overfunctor(Fo: OverfunctorData) -> ValidationReport:
    rep = ValidationReport()
    rep.extend(validate_functor(Fo.F), "F.")
    rep.extend(validate_functor(Fo.F0), "F0.")
    if not rep.ok:
        return rep
    A, A2 = Fo.dom.arity, Fo.cod.arity
    for x in Fo.dom.total.objects:
        if A2.ob(Fo.F.ob(x)) != Fo.F0.ob(A.ob(x)):
            rep.add("square", x)
    for m in Fo.dom.total.morphisms:
        if A2.mor(Fo.F.mor(m.id)) != Fo.F0.mor(A.mor(m.id)):
            rep.add("square", m.id)
    return rep


def overfunctor(dom: Overcategory, cod: Overcategory, F: FunctorData, F0: FunctorData | None = None) -> OverfunctorData:
    """Same-base overfunctor when ``F0`` is omitted."""
    return OverfunctorData(dom, cod, F, F0 if F0 is not None else identity_functor(dom.base))


def identity_overfunctor(ov: Overcategory) -> OverfunctorData:
    return OverfunctorData(ov, ov, identity_functor(ov.total), identity_functor(ov.base))


def opposite_overcategory(ov: Overcategory) -> Overcategory:
    T, B = opposite(ov.total), opposite(ov.base)
    return Overcategory(T, B, opposite_functor(ov.arity, T, B), name=f"{ov.name}^op" if ov.name else "")


def base_identity_overcategory(C: FinCat) -> Overcategory:
    """Every category is an overcategory over itself."""
    return Overcategory(C, C, identity_functor(C), name=C.name)


def over_terminal(C: FinCat, name: str = "") -> Overcategory:
    T = terminal_category()
    return Overcategory(C, T, constant_functor(C, T, "*"), name=name or C.name)


# ---------------------------------------------------------------------------
# fibers


def fiber(ov: Overcategory, at: str) -> tuple[FinCat, FunctorData]:
    """Fiber over a base object, or over a base morphism.

    Over an object B: the subcategory of objects over B and morphisms over
    1_B.  Over a morphism b: objects are the total morphisms over b, and a
    morphism f -> f' is a pair ``(u|v)`` of vertical morphisms with
    v∘f = f'∘u.  The second component of the result is the inclusion (for
    object fibers) or the projection (u|v) ↦ v (for morphism fibers).
    """
    base, total, A = ov.base, ov.total, ov.arity
    if base.has_object(at):
        idB = base.identity[at]
        objs = ov.fiber_objects(at)
        mors = [m for m in total.morphisms if A.mor(m.id) == idB]
        ms = {m.id for m in mors}
        sub = FinCat(
            objs,
            mors,
            {x: total.identity[x] for x in objs},
            {k: v for k, v in total.compose_table.items() if k[0] in ms and k[1] in ms},
            name=f"{ov.name}_{at}" if ov.name else "",
        )
        return sub, FunctorData(sub, total, {x: x for x in objs}, {m: m for m in ms})
    if not base.has_morphism(at):
        raise UnknownTarget(at)
    b = base.morphism(at)
    objs = [m.id for m in total.morphisms if A.mor(m.id) == at]
    id_s, id_t = base.identity[b.src], base.identity[b.dst]
    morphisms, parts = [], {}
    for f in objs:
        for f2 in objs:
            for u in total.hom(total.src(f), total.src(f2)):
                if A.mor(u) != id_s:
                    continue
                for v in total.hom(total.dst(f), total.dst(f2)):
                    if A.mor(v) == id_t and total.comp(v, f) == total.comp(f2, u):
                        mid = pair_id(u, v)
                        morphisms.append(Morphism(mid, f, f2))
                        parts[mid] = (u, v)
    identity = {f: pair_id(total.identity[total.src(f)], total.identity[total.dst(f)]) for f in objs}
    out = {}
    for m in morphisms:
        out.setdefault(m.src, []).append(m)
    compose = {}
    for m in morphisms:
        u1, v1 = parts[m.id]
        for n in out.get(m.dst, ()):
            u2, v2 = parts[n.id]
            compose[n.id, m.id] = pair_id(total.comp(u2, u1), total.comp(v2, v1))
    Fb = FinCat(objs, morphisms, identity, compose)
    proj = FunctorData(Fb, total, {f: total.dst(f) for f in objs}, {m: parts[m][1] for m in parts})
    return Fb, proj


# ---------------------------------------------------------------------------
# shapes

SHAPE_NAMES = ("empty", "terminal", "discrete2", "discrete3", "parallel", "span", "cospan", "chain2", "chain3")


def shape(name: str) -> FinCat:
    """Diagram shapes supported by cotensor/overlimit enumeration."""
    if name == "empty":
        return empty_category()
    if name in ("terminal", "discrete1"):
        return discrete(["0"], name="terminal")
    if name.startswith("discrete"):
        n = int(name[len("discrete"):])
        return discrete([str(i) for i in range(n)], name=name)
    if name == "parallel":
        return FinCat(
            ["s", "t"],
            [Morphism("id_s", "s", "s"), Morphism("id_t", "t", "t"), Morphism("u", "s", "t"), Morphism("v", "s", "t")],
            {"s": "id_s", "t": "id_t"},
            {
                ("id_s", "id_s"): "id_s",
                ("id_t", "id_t"): "id_t",
                ("u", "id_s"): "u",
                ("v", "id_s"): "v",
                ("id_t", "u"): "u",
                ("id_t", "v"): "v",
            },
            name="parallel",
        )
    if name == "span":
        return poset(["l", "c", "r"], [("c", "l"), ("c", "r")], name="span")
    if name == "cospan":
        return poset(["l", "c", "r"], [("l", "c"), ("r", "c")], name="cospan")
    if name.startswith("chain"):
        return chain(int(name[len("chain"):]), name=name)
    raise KeyError(f"unsupported shape {name!r}")


def nonidentity(C: FinCat) -> list[str]:
    return [m.id for m in C.morphisms if not C.is_identity(m.id)]


# ---------------------------------------------------------------------------
# diagrams and cones


@dataclass
class OverDiagram:
    shape: FinCat
    F: FunctorData
    B: str

    @property
    def id(self) -> str:
        objs = ",".join(self.F.ob(c) for c in self.shape.objects)
        mors = ",".join(self.F.mor(u) for u in nonidentity(self.shape))
        return pair_id(f"{objs};{mors}", self.B)


@dataclass
class Overcone:
    """A family ``components[c]: apex -> F(c)`` all lying over ``b``."""
    apex: str
    b: str
    components: dict[str, str]
    shape_objects: tuple[str, ...] = field(default=(), repr=False)

    def key(self) -> tuple:
        return (self.apex, self.b, tuple(self.components[c] for c in self.shape_objects))

    def to_json(self):
        return {"apex": self.apex, "b": self.b, "components": dict(self.components)}


def make_diagram(ov: Overcategory, shp: FinCat, object_map: dict, morphism_map: dict | None = None, B: str | None = None) -> OverDiagram:
    """Convenience constructor; identities of ``shp`` are filled in."""
    morphism_map = dict(morphism_map or {})
    for c in shp.objects:
        morphism_map.setdefault(shp.identity[c], ov.total.identity[object_map[c]])
    if B is None:
        if not shp.objects:
            raise ValueError("empty diagrams need an explicit base object")
        B = ov.arity.ob(object_map[shp.objects[0]])
    return OverDiagram(shp, FunctorData(shp, ov.total, dict(object_map), morphism_map), B)


def check_diagram(ov: Overcategory, d: OverDiagram) -> ValidationReport:
    rep = validate_functor(d.F)
    idB = ov.base.identity[d.B]
    for c in d.shape.objects:
        if ov.arity.ob(d.F.ob(c)) != d.B:
            rep.add("arity", c)
    for m in d.shape.morphisms:
        if ov.arity.mor(d.F.mor(m.id)) != idB:
            rep.add("arity", m.id)
    return rep


class _Budget:
    def __init__(self, name, limit):
        self.name, self.limit, self.used = name, limit, 0

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise ShapeTooLarge(self.name, self.limit)


def enumerate_diagrams(ov: Overcategory, shp: FinCat, B: str | None = None, budget: int | None = None) -> list[OverDiagram]:
    """All fiberwise functors ``shp -> E_B`` (for one B, or every B)."""
    budget = default_budget() if budget is None else budget
    counter = _Budget(shp.name or "shape", budget)
    bases = [B] if B is not None else list(ov.base.objects)
    objs = list(shp.objects)
    gens = nonidentity(shp)
    composites = [(g, f, gf) for (g, f), gf in shp.compose_table.items() if g in gens and f in gens]
    result = []
    for B0 in bases:
        idB = ov.base.identity[B0]
        fobjs = ov.fiber_objects(B0)
        for assignment in itertools.product(fobjs, repeat=len(objs)):
            counter.tick()
            omap = dict(zip(objs, assignment))
            options = []
            for u in gens:
                s, t = shp.src(u), shp.dst(u)
                options.append([f for f in ov.total.hom(omap[s], omap[t]) if ov.arity.mor(f) == idB])
            for choice in _backtrack(gens, options, composites, ov.total, counter):
                mmap = {shp.identity[c]: ov.total.identity[omap[c]] for c in objs}
                mmap.update(choice)
                result.append(OverDiagram(shp, FunctorData(shp, ov.total, omap, mmap), B0))
    return result


def _backtrack(gens, options, composites, total, counter):
    n = len(gens)
    chosen: dict[str, str] = {}
    checks_at = {i: [] for i in range(n)}
    pos = {u: i for i, u in enumerate(gens)}
    for g, f, gf in composites:
        checks_at[max(pos[g], pos[f], pos.get(gf, -1))].append((g, f, gf))

    def rec(i):
        if i == n:
            yield dict(chosen)
            return
        for f in options[i]:
            counter.tick()
            chosen[gens[i]] = f
            ok = True
            for g, h, gh in checks_at[i]:
                target = chosen[gh] if gh in chosen else None
                if target is None:
                    # composite lands on an identity of the shape
                    target = total.identity[total.src(chosen[h])]
                if total.compose_table.get((chosen[g], chosen[h])) != target:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
        chosen.pop(gens[i], None)

    yield from rec(0)


def _topological(shp: FinCat, gens: list[str]) -> list[str]:
    """Shape objects with every generator's source before its target
    (supported shapes have no non-identity cycles)."""
    order, placed = [], set()
    pending = list(shp.objects)
    while pending:
        for c in pending:
            if all(shp.src(u) in placed for u in gens if shp.dst(u) == c and shp.src(u) != c):
                order.append(c)
                placed.add(c)
                pending.remove(c)
                break
        else:
            return order + pending
    return order


def enumerate_overcones(ov: Overcategory, diag: OverDiagram) -> list[Overcone]:
    """Every overcone over every base morphism b: A(x) -> B, sorted.

    Components are chosen in topological order; a component at the target
    of a generator is forced by the cone condition, so only free objects
    are enumerated.
    """
    total, A, base = ov.total, ov.arity, ov.base
    shp = diag.shape
    objs = tuple(shp.objects)
    gens = nonidentity(shp)
    order = _topological(shp, gens)
    pos = {c: i for i, c in enumerate(order)}
    incoming = {c: [(shp.src(u), diag.F.mor(u)) for u in gens
                    if shp.dst(u) == c and pos[shp.src(u)] < pos[c]] for c in objs}
    cones = []
    for x in total.objects:
        for b in base.hom(A.ob(x), diag.B):
            options = {c: [f for f in total.hom(x, diag.F.ob(c)) if A.mor(f) == b] for c in objs}
            tau = {}

            def rec(i):
                if i == len(order):
                    if all(total.comp(diag.F.mor(u), tau[shp.src(u)]) == tau[shp.dst(u)] for u in gens):
                        cones.append(Overcone(x, b, dict(tau), objs))
                    return
                c = order[i]
                forced = {total.comp(Fu, tau[src]) for src, Fu in incoming[c]}
                if len(forced) > 1:
                    return
                for f in (forced if forced else options[c]):
                    tau[c] = f
                    rec(i + 1)
                tau.pop(c, None)

            rec(0)
    cones.sort(key=Overcone.key)
    return cones


def opposite_diagram(diag: OverDiagram, ov_op: Overcategory) -> OverDiagram:
    shp = opposite(diag.shape)
    shp.name = diag.shape.name
    return OverDiagram(shp, FunctorData(shp, ov_op.total, dict(diag.F.object_map), dict(diag.F.morphism_map)), diag.B)


def enumerate_overcocones(ov: Overcategory, diag: OverDiagram) -> list[Overcone]:
    """Overcocones, computed as overcones in the opposite overcategory.
    ``apex`` is the cocone's vertex and ``b: B -> A(apex)``."""
    op = opposite_overcategory(ov)
    return enumerate_overcones(op, opposite_diagram(diag, op))


# ---------------------------------------------------------------------------
# cotensor


def cotensor(ov: Overcategory, shp: FinCat, budget: int | None = None) -> Overcategory:
    """E^(C): objects are fiberwise diagrams (F, B), morphisms (τ, b) with
    every component of τ over b; arity is the second projection."""
    budget = default_budget() if budget is None else budget
    diagrams = enumerate_diagrams(ov, shp, budget=budget)
    counter = _Budget(shp.name or "shape", budget)
    total, base, A = ov.total, ov.base, ov.arity
    objs = tuple(shp.objects)
    gens = nonidentity(shp)
    by_id = {d.id: d for d in diagrams}
    objects = list(by_id)
    morphisms, parts, arity_mor = [], {}, {}
    for d in diagrams:
        for d2 in diagrams:
            for b in base.hom(d.B, d2.B):
                options = [[f for f in total.hom(d.F.ob(c), d2.F.ob(c)) if A.mor(f) == b] for c in objs]
                for comps in itertools.product(*options):
                    counter.tick()
                    tau = dict(zip(objs, comps))
                    if all(
                        total.comp(d2.F.mor(u), tau[shp.src(u)]) == total.comp(tau[shp.dst(u)], d.F.mor(u))
                        for u in gens
                    ):
                        mid = _cot_mor_id(d.id, d2.id, comps, b)
                        morphisms.append(Morphism(mid, d.id, d2.id))
                        parts[mid] = (comps, b)
                        arity_mor[mid] = b
    identity = {
        d.id: _cot_mor_id(d.id, d.id, tuple(total.identity[d.F.ob(c)] for c in objs), base.identity[d.B])
        for d in diagrams
    }
    out = {}
    for m in morphisms:
        out.setdefault(m.src, []).append(m)
    compose = {}
    for m in morphisms:
        c1, b1 = parts[m.id]
        for n in out.get(m.dst, ()):
            c2, b2 = parts[n.id]
            comps = tuple(total.comp(g, f) for g, f in zip(c2, c1))
            compose[n.id, m.id] = _cot_mor_id(m.src, n.dst, comps, base.comp(b2, b1))
    E = FinCat(objects, morphisms, identity, compose, name=f"{ov.name}^({shp.name})")
    arity = FunctorData(E, base, {d.id: d.B for d in diagrams}, arity_mor)
    result = Overcategory(E, base, arity, name=E.name)
    result.diagrams = by_id
    return result


def _cot_mor_id(src: str, dst: str, comps, b: str) -> str:
    return f"[{src}>{dst}:" + ",".join(comps) + f"|{b}]"


def diagonal_overfunctor(ov: Overcategory, shp: FinCat, cot: Overcategory | None = None, budget: int | None = None) -> OverfunctorData:
    """x ↦ (Δx, A x), f ↦ (Δf, A f)."""
    cot = cot if cot is not None else cotensor(ov, shp, budget)
    total, A = ov.total, ov.arity
    objs = tuple(shp.objects)
    gens = nonidentity(shp)

    def diag_id(x):
        return pair_id(",".join(x for _ in objs) + ";" + ",".join(total.identity[x] for _ in gens), A.ob(x))

    omap = {x: diag_id(x) for x in total.objects}
    mmap = {m.id: _cot_mor_id(omap[m.src], omap[m.dst], tuple(m.id for _ in objs), A.mor(m.id)) for m in total.morphisms}
    F = FunctorData(total, cot.total, omap, mmap)
    return OverfunctorData(ov, cot, F, identity_functor(ov.base))


def cone_as_nat_trans(ov: Overcategory, diag: OverDiagram, cone: Overcone) -> NatTransData:
    delta = constant_functor(diag.shape, ov.total, cone.apex)
    return NatTransData(delta, diag.F, dict(cone.components))
