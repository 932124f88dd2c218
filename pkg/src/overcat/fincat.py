"""Finite categories, functors and natural transformations as explicit tables.

Everything else in the package is built on :class:`FinCat`.  Objects and
morphisms are identified by strings; derived constructions (opposite,
coslice, pullback, ...) generate ids deterministically with :func:`pair_id`
so that two runs of the same construction give equal tables.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CodomainMismatch, MalformedTable, UnknownObject


def pair_id(*parts: str) -> str:
    """Canonical id for a tuple of ids: ``(a|b|c)``."""
    return "(" + "|".join(parts) + ")"


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


class FinCat:
    """A finite category given by its object list, morphism list,
    identity map and composition table ``(g, f) -> g∘f``.

    Construction performs no law checking (broken tables are legitimate
    test inputs); use :func:`validate_category`.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism | tuple[str, str, str]],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        name: str = "",
    ):
        self.objects = tuple(objects)
        self.morphisms = tuple(m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms)
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self.name = name
        self._mor = {m.id: m for m in self.morphisms}
        self._obj = set(self.objects)
        self._out = defaultdict(list)
        self._in = defaultdict(list)
        self._hom = defaultdict(list)
        for m in self.morphisms:
            self._out[m.src].append(m.id)
            self._in[m.dst].append(m.id)
            self._hom[m.src, m.dst].append(m.id)

    # -- lookups -----------------------------------------------------------
    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCat{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def has_object(self, x: str) -> bool:
        return x in self._obj

    def has_morphism(self, f: str) -> bool:
        return f in self._mor

    def morphism(self, f: str) -> Morphism:
        try:
            return self._mor[f]
        except KeyError:
            raise MalformedTable(f"unknown morphism {f!r}") from None

    def src(self, f: str) -> str:
        return self.morphism(f).src

    def dst(self, f: str) -> str:
        return self.morphism(f).dst

    def id(self, x: str) -> str:
        try:
            return self.identity[x]
        except KeyError:
            raise UnknownObject(x) from None

    def hom(self, a: str, b: str) -> list[str]:
        return self._hom.get((a, b), [])

    def out_of(self, a: str) -> list[str]:
        return self._out.get(a, [])

    def into(self, b: str) -> list[str]:
        return self._in.get(b, [])

    def comp(self, g: str, *fs: str) -> str:
        """``comp(g, f)`` is g∘f; more arguments compose right to left."""
        result = g
        for f in fs:
            try:
                result = self.compose_table[result, f]
            except KeyError:
                raise MalformedTable(f"no composite for ({result}, {f})") from None
        return result

    def is_identity(self, f: str) -> bool:
        m = self._mor[f]
        return m.src == m.dst and self.identity.get(m.src) == f

    def inverse(self, f: str) -> str | None:
        m = self.morphism(f)
        for g in self.hom(m.dst, m.src):
            if self.comp(g, f) == self.identity[m.src] and self.comp(f, g) == self.identity[m.dst]:
                return g
        return None

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def isomorphic(self, a: str, b: str) -> bool:
        return any(self.is_iso(f) for f in self.hom(a, b))

    # -- equality is table equality, independent of declaration order ------
    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and set(self.morphisms) == set(other.morphisms)
            and self.identity == other.identity
            and self.compose_table == other.compose_table
        )

    __hash__ = None


@dataclass
class FunctorData:
    dom: FinCat
    cod: FinCat
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def __call__(self, x: str) -> str:
        """Apply to an object or a morphism id."""
        if x in self.morphism_map:
            return self.morphism_map[x]
        return self.object_map[x]

    def ob(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, f: str) -> str:
        return self.morphism_map[f]

    def same_maps(self, other: "FunctorData") -> bool:
        return self.object_map == other.object_map and self.morphism_map == other.morphism_map


@dataclass
class NatTransData:
    dom_functor: FunctorData
    cod_functor: FunctorData
    components: dict[str, str]

    def __getitem__(self, x: str) -> str:
        return self.components[x]


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[str, ...]

    def to_json(self):
        return {"law": self.law, "witness": list(self.witness)}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, *witness: str) -> None:
        self.violations.append(Violation(law, tuple(witness)))

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def first(self, law: str | None = None) -> Violation | None:
        for v in self.violations:
            if law is None or v.law == law:
                return v
        return None

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness))

    def to_json(self):
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


# ---------------------------------------------------------------------------
# validation


def check_well_formed(cat: FinCat) -> None:
    """Raise :class:`MalformedTable` on dangling ids or duplicates."""
    if len(set(cat.objects)) != len(cat.objects):
        raise MalformedTable("duplicate object id")
    if len(cat._mor) != len(cat.morphisms):
        raise MalformedTable("duplicate morphism id")
    for m in cat.morphisms:
        if m.src not in cat._obj or m.dst not in cat._obj:
            raise MalformedTable(f"morphism {m.id!r} has dangling endpoint")
    for x in cat.objects:
        if x not in cat.identity:
            raise MalformedTable(f"object {x!r} has no identity")
    for x, i in cat.identity.items():
        if x not in cat._obj:
            raise MalformedTable(f"identity for unknown object {x!r}")
        if i not in cat._mor:
            raise MalformedTable(f"identity {i!r} of {x!r} is not a listed morphism")
    for (g, f), gf in cat.compose_table.items():
        for k in (g, f, gf):
            if k not in cat._mor:
                raise MalformedTable(f"composition entry ({g}, {f}) -> {gf} mentions unknown {k!r}")


def validate_category(cat: FinCat) -> ValidationReport:
    """Exhaustively check the category axioms.  Raises MalformedTable for
    dangling ids; law failures are collected in the report."""
    check_well_formed(cat)
    rep = ValidationReport()
    table = cat.compose_table
    mor = cat._mor
    for x in cat.objects:
        i = mor[cat.identity[x]]
        if i.src != x or i.dst != x:
            rep.add("identity_type", x, i.id)
    for (g, f) in table:
        if mor[f].dst != mor[g].src:
            rep.add("domain", g, f)
    for f in cat.morphisms:
        for g in cat.out_of(f.dst):
            gf = table.get((g, f.id))
            if gf is None:
                rep.add("totality", g, f.id)
            elif mor[gf].src != f.src or mor[gf].dst != mor[g].dst:
                rep.add("closure", g, f.id)
    for f in cat.morphisms:
        left = table.get((cat.identity[f.dst], f.id))
        if left is not None and left != f.id:
            rep.add("left_identity", f.id)
        right = table.get((f.id, cat.identity[f.src]))
        if right is not None and right != f.id:
            rep.add("right_identity", f.id)
    for f in cat.morphisms:
        for g in cat.out_of(f.dst):
            gf = table.get((g, f.id))
            for h in cat.out_of(mor[g].dst):
                hg = table.get((h, g))
                if gf is None or hg is None:
                    continue
                lhs = table.get((h, gf))
                rhs = table.get((hg, f.id))
                if lhs is not None and rhs is not None and lhs != rhs:
                    rep.add("associativity", h, g, f.id)
    return rep


def _check_functor_tables(F: FunctorData) -> None:
    if set(F.object_map) != set(F.dom.objects):
        raise MalformedTable("functor object_map does not cover the domain objects")
    if set(F.morphism_map) != {m.id for m in F.dom.morphisms}:
        raise MalformedTable("functor morphism_map does not cover the domain morphisms")
    for x, y in F.object_map.items():
        if not F.cod.has_object(y):
            raise MalformedTable(f"functor sends {x!r} to unknown object {y!r}")
    for f, g in F.morphism_map.items():
        if not F.cod.has_morphism(g):
            raise MalformedTable(f"functor sends {f!r} to unknown morphism {g!r}")


def validate_functor(F: FunctorData) -> ValidationReport:
    _check_functor_tables(F)
    rep = ValidationReport()
    C, D = F.dom, F.cod
    for m in C.morphisms:
        image = D.morphism(F.morphism_map[m.id])
        if image.src != F.object_map[m.src]:
            rep.add("src", m.id)
        if image.dst != F.object_map[m.dst]:
            rep.add("dst", m.id)
    for x in C.objects:
        if F.morphism_map[C.identity[x]] != D.identity[F.object_map[x]]:
            rep.add("identity", x)
    if not rep.ok:
        return rep
    for (g, f), gf in C.compose_table.items():
        Fg, Ff = F.morphism_map[g], F.morphism_map[f]
        if D.compose_table.get((Fg, Ff)) != F.morphism_map[gf]:
            rep.add("composite", g, f)
    return rep


def validate_nat_trans(tau: NatTransData) -> ValidationReport:
    F, G = tau.dom_functor, tau.cod_functor
    if F.dom is not G.dom and F.dom != G.dom:
        raise MalformedTable("natural transformation between functors with different domains")
    if F.cod is not G.cod and F.cod != G.cod:
        raise MalformedTable("natural transformation between functors with different codomains")
    if set(tau.components) != set(F.dom.objects):
        raise MalformedTable("components do not cover the domain objects")
    D = F.cod
    rep = ValidationReport()
    for x, c in tau.components.items():
        if not D.has_morphism(c):
            raise MalformedTable(f"component {c!r} is not a morphism")
        if D.src(c) != F.ob(x) or D.dst(c) != G.ob(x):
            rep.add("component_type", x, c)
    if not rep.ok:
        return rep
    for m in F.dom.morphisms:
        lhs = D.compose_table.get((G.mor(m.id), tau.components[m.src]))
        rhs = D.compose_table.get((tau.components[m.dst], F.mor(m.id)))
        if lhs is None or lhs != rhs:
            rep.add("naturality", m.id)
    return rep


# ---------------------------------------------------------------------------
# functor helpers


def identity_functor(C: FinCat) -> FunctorData:
    return FunctorData(C, C, {x: x for x in C.objects}, {m.id: m.id for m in C.morphisms})


def compose_functors(G: FunctorData, F: FunctorData) -> FunctorData:
    """G∘F."""
    return FunctorData(
        F.dom,
        G.cod,
        {x: G.object_map[y] for x, y in F.object_map.items()},
        {f: G.morphism_map[g] for f, g in F.morphism_map.items()},
    )


def constant_functor(C: FinCat, D: FinCat, d: str) -> FunctorData:
    return FunctorData(C, D, {x: d for x in C.objects}, {m.id: D.identity[d] for m in C.morphisms})


def identity_transformation(F: FunctorData) -> NatTransData:
    return NatTransData(F, F, {x: F.cod.identity[F.ob(x)] for x in F.dom.objects})


# ---------------------------------------------------------------------------
# derived categories


def opposite(cat: FinCat) -> FinCat:
    """Same ids, endpoints swapped, composition transposed."""
    return FinCat(
        cat.objects,
        [Morphism(m.id, m.dst, m.src) for m in cat.morphisms],
        cat.identity,
        {(f, g): gf for (g, f), gf in cat.compose_table.items()},
        name=f"{cat.name}^op" if cat.name else "",
    )


def opposite_functor(F: FunctorData, dom_op: FinCat | None = None, cod_op: FinCat | None = None) -> FunctorData:
    return FunctorData(
        dom_op or opposite(F.dom),
        cod_op or opposite(F.cod),
        dict(F.object_map),
        dict(F.morphism_map),
    )


def coslice(cat: FinCat, g: str) -> tuple[FinCat, FunctorData]:
    """The category g/C of arrows out of ``g`` with its projection to C.

    Objects are the morphism ids ``k: g -> x``; a morphism ``(k|u)`` goes
    from ``k`` to ``u∘k``.
    """
    if not cat.has_object(g):
        raise UnknownObject(g)
    objects = list(cat.out_of(g))
    morphisms, identity, compose = [], {}, {}
    proj_mor = {}
    for k in objects:
        for u in cat.out_of(cat.dst(k)):
            mid = pair_id(k, u)
            morphisms.append(Morphism(mid, k, cat.comp(u, k)))
            proj_mor[mid] = u
        identity[k] = pair_id(k, cat.identity[cat.dst(k)])
    for m in morphisms:
        k, u = m.src, proj_mor[m.id]
        for u2 in cat.out_of(cat.dst(u)):
            second = pair_id(m.dst, u2)
            compose[second, m.id] = pair_id(k, cat.comp(u2, u))
    C = FinCat(objects, morphisms, identity, compose, name=f"{g}/{cat.name}" if cat.name else "")
    proj = FunctorData(C, cat, {k: cat.dst(k) for k in objects}, proj_mor)
    return C, proj


def slice_category(cat: FinCat, g: str) -> tuple[FinCat, FunctorData]:
    """The category C/g of arrows into ``g``, as the opposite of a coslice.

    Objects are morphism ids ``k: x -> g``; ``(k|u)`` is the morphism from
    ``k∘u`` to ``k``.
    """
    op = opposite(cat)
    C, proj = coslice(op, g)
    Cop = opposite(C)
    return Cop, opposite_functor(proj, Cop, cat)


def pullback(F: FunctorData, G: FunctorData) -> tuple[FinCat, FunctorData, FunctorData]:
    """Strict pullback of categories with both projections."""
    if F.cod is not G.cod and F.cod != G.cod:
        raise CodomainMismatch("pullback of functors with different codomains")
    A, B = F.dom, G.dom
    objects = [pair_id(a, b) for a in A.objects for b in B.objects if F.ob(a) == G.ob(b)]
    obj_set = set(objects)
    morphisms = []
    comps: dict[str, tuple[str, str]] = {}
    by_image = defaultdict(list)
    for g in B.morphisms:
        by_image[G.mor(g.id)].append(g)
    for f in A.morphisms:
        for g in by_image.get(F.mor(f.id), ()):
            mid = pair_id(f.id, g.id)
            morphisms.append(Morphism(mid, pair_id(f.src, g.src), pair_id(f.dst, g.dst)))
            comps[mid] = (f.id, g.id)
    identity = {}
    for a in A.objects:
        for b in B.objects:
            p = pair_id(a, b)
            if p in obj_set:
                identity[p] = pair_id(A.identity[a], B.identity[b])
    compose = {}
    out = defaultdict(list)
    for m in morphisms:
        out[m.src].append(m)
    for m in morphisms:
        f1, g1 = comps[m.id]
        for n in out[m.dst]:
            f2, g2 = comps[n.id]
            compose[n.id, m.id] = pair_id(A.comp(f2, f1), B.comp(g2, g1))
    P = FinCat(objects, morphisms, identity, compose)
    obj_parts = {pair_id(a, b): (a, b) for a in A.objects for b in B.objects}
    p1 = FunctorData(P, A, {p: obj_parts[p][0] for p in objects}, {m: c[0] for m, c in comps.items()})
    p2 = FunctorData(P, B, {p: obj_parts[p][1] for p in objects}, {m: c[1] for m, c in comps.items()})
    return P, p1, p2


def pullback_category(F: FunctorData, G: FunctorData) -> FinCat:
    return pullback(F, G)[0]


# ---------------------------------------------------------------------------
# builders


def terminal_category(obj: str = "*") -> FinCat:
    i = f"id_{obj}"
    return FinCat([obj], [Morphism(i, obj, obj)], {obj: i}, {(i, i): i}, name="1")


def empty_category() -> FinCat:
    return FinCat([], [], {}, {}, name="0")


def discrete(objects: Iterable[str], name: str = "") -> FinCat:
    objects = list(objects)
    ids = {x: f"id_{x}" for x in objects}
    return FinCat(
        objects,
        [Morphism(ids[x], x, x) for x in objects],
        ids,
        {(ids[x], ids[x]): ids[x] for x in objects},
        name=name,
    )


def poset(elements: Iterable[str], relations: Iterable[tuple[str, str]], name: str = "") -> FinCat:
    """Poset category; ``relations`` generate ≤ by reflexive-transitive closure.
    The morphism ``a≤b`` has id ``"a<=b"``."""
    elements = list(elements)
    leq = {(a, a) for a in elements} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    rel = [(a, b) for a in elements for b in elements if (a, b) in leq]
    ids = {(a, b): f"{a}<={b}" for a, b in rel}
    compose = {}
    for (a, b) in rel:
        for c in elements:
            if (b, c) in leq:
                compose[ids[b, c], ids[a, b]] = ids[a, c]
    return FinCat(elements, [Morphism(ids[r], *r) for r in rel], {a: ids[a, a] for a in elements}, compose, name=name)


def chain(n: int, name: str = "") -> FinCat:
    """The ordinal 0 < 1 < ... < n-1."""
    els = [str(i) for i in range(n)]
    return poset(els, [(els[i], els[i + 1]) for i in range(n - 1)], name=name or f"[{n}]")


def monoid_category(elements: list[str], mult: Mapping[tuple[str, str], str], unit: str, obj: str = "*", name: str = "") -> FinCat:
    """One-object category; ``mult[g, f]`` is the product g·f = g∘f."""
    return FinCat(
        [obj],
        [Morphism(e, obj, obj) for e in elements],
        {obj: unit},
        {(g, f): mult[g, f] for g in elements for f in elements},
        name=name,
    )


def _fn_id(src: str, dst: str, images: tuple[int, ...]) -> str:
    return f"{src}->{dst}:" + ",".join(map(str, images))


def concrete_category(objects: Mapping[str, int], functions: Iterable[tuple[str, str, tuple[int, ...]]], name: str = "") -> FinCat:
    """Subcategory of FinSet: objects are named finite sets ``{0..n-1}``;
    ``functions`` are closed under composition and identities are added."""
    objs = list(objects)
    funcs = {(s, d, tuple(img)) for s, d, img in functions}
    funcs |= {(x, x, tuple(range(objects[x]))) for x in objs}
    for s, d, img in funcs:
        if len(img) != objects[s] or any(not 0 <= v < objects[d] for v in img):
            raise MalformedTable(f"function {s}->{d}:{img} is ill-typed")
    changed = True
    while changed:
        changed = False
        for (s1, d1, f), (s2, d2, g) in itertools.product(list(funcs), repeat=2):
            if d1 == s2:
                gf = (s1, d2, tuple(g[v] for v in f))
                if gf not in funcs:
                    funcs.add(gf)
                    changed = True
    order = {x: i for i, x in enumerate(objs)}
    ordered = sorted(funcs, key=lambda t: (order[t[0]], order[t[1]], t[2]))
    morphisms = [Morphism(_fn_id(*t), t[0], t[1]) for t in ordered]
    by_src = defaultdict(list)
    for t in ordered:
        by_src[t[0]].append(t)
    compose = {}
    for (s1, d1, f) in ordered:
        for (s2, d2, g) in by_src[d1]:
            compose[_fn_id(s2, d2, g), _fn_id(s1, d1, f)] = _fn_id(s1, d2, tuple(g[v] for v in f))
    identity = {x: _fn_id(x, x, tuple(range(objects[x]))) for x in objs}
    return FinCat(objs, morphisms, identity, compose, name=name)


def finset(sizes: Iterable[int], name: str = "") -> FinCat:
    """Full subcategory of FinSet on the sets {0..n-1} for n in ``sizes``;
    the object for size n is named ``str(n)``."""
    sizes = list(sizes)
    objects = {str(n): n for n in sizes}
    funcs = [
        (str(m), str(n), img)
        for m in sizes
        for n in sizes
        for img in itertools.product(range(n), repeat=m)
    ]
    return concrete_category(objects, funcs, name=name or f"FinSet{sizes}")


def function_of(morphism_id: str) -> tuple[int, ...]:
    """Inverse of the id scheme used by :func:`concrete_category`."""
    tail = morphism_id.rsplit(":", 1)[1]
    return tuple(int(v) for v in tail.split(",")) if tail else ()


def to_terminal(C: FinCat, T: FinCat | None = None) -> FunctorData:
    T = T or terminal_category()
    (t,) = T.objects
    return FunctorData(C, T, {x: t for x in C.objects}, {m.id: T.identity[t] for m in C.morphisms})


def product(C: FinCat, D: FinCat) -> tuple[FinCat, FunctorData, FunctorData]:
    """C×D as the pullback over the terminal category."""
    T = terminal_category()
    P, p1, p2 = pullback(to_terminal(C, T), to_terminal(D, T))
    if C.name and D.name:
        P.name = f"{C.name}x{D.name}"
    return P, p1, p2


def full_subcategory(cat: FinCat, objects: Iterable[str], name: str = "") -> tuple[FinCat, FunctorData]:
    keep = [x for x in cat.objects if x in set(objects)]
    ks = set(keep)
    mors = [m for m in cat.morphisms if m.src in ks and m.dst in ks]
    ms = {m.id for m in mors}
    sub = FinCat(
        keep,
        mors,
        {x: cat.identity[x] for x in keep},
        {k: v for k, v in cat.compose_table.items() if k[0] in ms and k[1] in ms},
        name=name,
    )
    return sub, FunctorData(sub, cat, {x: x for x in keep}, {m: m for m in ms})


def subcategory(cat: FinCat, morphism_ids: Iterable[str], name: str = "") -> FinCat:
    """Subcategory spanned by the given morphisms (assumed closed)."""
    ms = set(morphism_ids)
    mors = [m for m in cat.morphisms if m.id in ms]
    objs = [x for x in cat.objects if cat.identity[x] in ms]
    return FinCat(
        objs,
        mors,
        {x: cat.identity[x] for x in objs},
        {k: v for k, v in cat.compose_table.items() if k[0] in ms and k[1] in ms},
        name=name,
    )


def is_connected(cat: FinCat) -> bool:
    if not cat.objects:
        return False
    seen = {cat.objects[0]}
    stack = [cat.objects[0]]
    adj = defaultdict(set)
    for m in cat.morphisms:
        adj[m.src].add(m.dst)
        adj[m.dst].add(m.src)
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(cat.objects)
