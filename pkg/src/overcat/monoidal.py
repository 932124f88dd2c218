"""Monoidal overcategories, overmonoids, slices E/C and pointed objects Pt(E).

Every construction here talks to an instance through the
:class:`MonoidalOvercategory` protocol, so the same checks run on table
instances (finite tensor tables) and on effective instances whose objects
are labelled finite sets.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any

from .errors import BudgetExceeded, CoequalizerUnavailable, OvercatError, UnitNotInitial
from .fincat import FinCat, FunctorData, Morphism, ValidationReport, pair_id, pullback_category, slice_category
from .overcat import Overcategory, default_budget


class TensorTypeError(OvercatError, TypeError):
    """The tensor table is not defined on the kernel pair of the arity."""


class MonoidalOvercategory(ABC):
    """The tuple (E, A, ⊗, I, u_l, u_r, ass) behind a uniform interface.

    Objects and morphisms are opaque hashable values; ``label`` turns them
    into canonical strings. Effective instances also implement the
    element-level methods used by coequalizers and the free-monoid chain.
    """
    name: str = ""
    base: FinCat

    # -- category -------------------------------------------------------------
    @abstractmethod
    def objects(self, max_size: int | None = None, B: str | None = None) -> list: ...

    @abstractmethod
    def hom(self, X, Y, over: str | None = None) -> list: ...

    @abstractmethod
    def dom(self, f): ...

    @abstractmethod
    def cod(self, f): ...

    @abstractmethod
    def arity(self, X) -> str: ...

    @abstractmethod
    def arity_mor(self, f) -> str: ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def identity(self, X): ...

    # -- monoidal structure ------------------------------------------------------
    @abstractmethod
    def tensor(self, X, Y): ...

    @abstractmethod
    def tensor_mor(self, f, g): ...

    @abstractmethod
    def unit(self, B: str): ...

    @abstractmethod
    def unit_mor(self, b: str): ...

    @abstractmethod
    def u_l(self, X): ...

    @abstractmethod
    def u_r(self, X): ...

    @abstractmethod
    def ass(self, X, Y, Z): ...

    @abstractmethod
    def inverse(self, f): ...

    @abstractmethod
    def is_iso(self, f) -> bool: ...

    @abstractmethod
    def label(self, x) -> str: ...

    # -- effective extras -----------------------------------------------------------
    def elements(self, X) -> tuple:
        raise CoequalizerUnavailable(f"{self.name or type(self).__name__} has no element representation")

    def apply(self, f, e):
        raise CoequalizerUnavailable(f"{self.name or type(self).__name__} has no element representation")

    def coequalizer(self, f, g):
        raise CoequalizerUnavailable(f"{self.name or type(self).__name__} does not compute coequalizers")

    def factor(self, e, h):
        """The unique u with u∘e = h when e is a quotient map, else None."""
        raise CoequalizerUnavailable(f"{self.name or type(self).__name__} does not factor maps")

    def is_morphism(self, f) -> bool:
        """Structural well-formedness of a morphism value (wrappers override)."""
        return True

    # -- derived ---------------------------------------------------------------------
    def compose_all(self, *fs):
        """compose_all(h, g, f) = h∘g∘f."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def vertical(self, f) -> bool:
        return self.base.is_identity(self.arity_mor(f))

    def size(self, X) -> int:
        return len(self.elements(X))

    def initial_map(self, X):
        """The unique vertical map I(A X) → X; UnitNotInitial otherwise."""
        B = self.arity(X)
        maps = self.hom(self.unit(B), X, over=self.base.id(B))
        if len(maps) != 1:
            raise UnitNotInitial(f"I({B}) has {len(maps)} maps to {self.label(X)} in its fiber")
        return maps[0]


# ---------------------------------------------------------------------------
# table instances


class TableMonoidal(MonoidalOvercategory):
    """A monoidal overcategory given by finite tables.

    ``tensor`` is a functor from the kernel pair of the arity to the total
    category, ``unit`` a functor from the base; ``u_l``/``u_r`` map objects to
    morphism ids and ``ass`` maps ``pair_id(x, y, z)`` to morphism ids.
    """

    def __init__(self, ov: Overcategory, tensor: FunctorData, unit: FunctorData,
                 u_l: dict, u_r: dict, ass: dict, name: str = ""):
        kernel = pullback_category(ov.arity, ov.arity)
        if tensor.dom != kernel:
            raise TensorTypeError("tensor must be defined on the kernel pair of the arity functor")
        if tensor.cod != ov.total:
            raise TensorTypeError("tensor must land in the total category")
        if unit.dom != ov.base or unit.cod != ov.total:
            raise TensorTypeError("unit must be a functor from the base to the total category")
        self.ov = ov
        self.base = ov.base
        self.tensor_functor = tensor
        self.unit_functor = unit
        self._u_l, self._u_r, self._ass = dict(u_l), dict(u_r), dict(ass)
        self.name = name or ov.name

    def objects(self, max_size=None, B=None):
        return [x for x in self.ov.total.objects if B is None or self.ov.A(x) == B]

    def hom(self, X, Y, over=None):
        return self.ov.hom_over(X, Y, over) if over is not None else self.ov.total.hom(X, Y)

    def dom(self, f):
        return self.ov.total.src(f)

    def cod(self, f):
        return self.ov.total.dst(f)

    def arity(self, X):
        return self.ov.arity.ob(X)

    def arity_mor(self, f):
        return self.ov.arity.mor(f)

    def compose(self, g, f):
        return self.ov.total.comp(g, f)

    def identity(self, X):
        return self.ov.total.id(X)

    def tensor(self, X, Y):
        return self.tensor_functor.ob(pair_id(X, Y))

    def tensor_mor(self, f, g):
        return self.tensor_functor.mor(pair_id(f, g))

    def unit(self, B):
        return self.unit_functor.ob(B)

    def unit_mor(self, b):
        return self.unit_functor.mor(b)

    def u_l(self, X):
        return self._u_l[X]

    def u_r(self, X):
        return self._u_r[X]

    def ass(self, X, Y, Z):
        return self._ass[pair_id(X, Y, Z)]

    def inverse(self, f):
        g = self.ov.total.inverse(f)
        if g is None:
            raise ValueError(f"{f} is not invertible")
        return g

    def is_iso(self, f):
        return self.ov.total.is_iso(f)

    def label(self, x):
        return x


def join_table_instance(L: FinCat, G: FinCat, name: str = "") -> TableMonoidal:
    """L×G over G with fiberwise join as tensor and the bottom as unit.

    ``L`` must be a finite poset with all binary joins and a bottom; all
    structure cells are identities.
    """
    from .fincat import product

    total, _p1, p2 = product(L, G)
    ov = Overcategory(total, G, p2, name=name or f"{L.name}x{G.name}")

    def leq(a, b):
        return bool(L.hom(a, b))

    def join(a, b):
        ubs = [c for c in L.objects if leq(a, c) and leq(b, c)]
        least = [c for c in ubs if all(leq(c, d) for d in ubs)]
        if not least:
            raise ValueError(f"{a} and {b} have no join in {L.name}")
        return least[0]

    bottoms = [c for c in L.objects if all(leq(c, d) for d in L.objects)]
    if not bottoms:
        raise ValueError(f"{L.name} has no bottom element")
    bot = bottoms[0]
    kernel = pullback_category(p2, p2)
    parts = {}
    for x in L.objects:
        for B in G.objects:
            parts[pair_id(x, B)] = (x, B)
    mparts = {}
    for f in L.morphisms:
        for b in G.morphisms:
            mparts[pair_id(f.id, b.id)] = (f, b)
    omap, mmap = {}, {}
    for p in kernel.objects:
        for X in total.objects:
            for Y in total.objects:
                if pair_id(X, Y) == p:
                    (x, B), (y, _B) = parts[X], parts[Y]
                    omap[p] = pair_id(join(x, y), B)
    for m in kernel.morphisms:
        for f in total.morphisms:
            for g in total.morphisms:
                if pair_id(f.id, g.id) == m.id:
                    (f1, b), (g1, _b) = mparts[f.id], mparts[g.id]
                    src, dst = join(f1.src, g1.src), join(f1.dst, g1.dst)
                    mmap[m.id] = pair_id(L.hom(src, dst)[0], b.id)
    tensor = FunctorData(kernel, total, omap, mmap)
    unit = FunctorData(G, total, {B: pair_id(bot, B) for B in G.objects},
                       {b.id: pair_id(L.id(bot), b.id) for b in G.morphisms})
    ids = {X: total.id(X) for X in total.objects}
    ass = {}
    for X in total.objects:
        for Y in total.objects:
            for Z in total.objects:
                if parts[X][1] == parts[Y][1] == parts[Z][1]:
                    W = omap[pair_id(omap[pair_id(X, Y)], Z)]
                    ass[pair_id(X, Y, Z)] = total.id(W)
    return TableMonoidal(ov, tensor, unit, ids, dict(ids), ass, name=ov.name)


# ---------------------------------------------------------------------------
# wrapper values


def memo_hash(cls):
    """Cache the field hash of a frozen dataclass; wrapped values nest deeply
    and are hashed many times inside coherence loops."""
    base = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = base(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


@memo_hash
@dataclass(frozen=True)
class PointedObject:
    """An object X with a point x: I(A X) → X."""
    X: Any
    x: Any


@memo_hash
@dataclass(frozen=True)
class SliceObject:
    """An object X with a structure map x: X → C into a fixed overmonoid."""
    X: Any
    x: Any


@memo_hash
@dataclass(frozen=True)
class Morph:
    """A morphism of a wrapped instance: source, target and underlying map."""
    src: Any
    dst: Any
    under: Any


class _Wrapper(MonoidalOvercategory):
    """Shared plumbing for instances whose morphisms are :class:`Morph`."""

    def __init__(self, M: MonoidalOvercategory):
        self.M = M
        self._tensor_cache = {}
        self._coh_cache = {}

    def tensor(self, P, Q):
        try:
            return self._tensor_cache[P, Q]
        except KeyError:
            out = self._tensor_cache[P, Q] = self._tensor(P, Q)
            return out

    def dom(self, f):
        return f.src

    def cod(self, f):
        return f.dst

    def compose(self, g, f):
        if g.src != f.dst:
            raise ValueError("composing non-composable morphisms")
        return Morph(f.src, g.dst, self.M.compose(g.under, f.under))

    def identity(self, X):
        return Morph(X, X, self.M.identity(X.X))

    def tensor_mor(self, f, g):
        return Morph(self.tensor(f.src, g.src), self.tensor(f.dst, g.dst), self.M.tensor_mor(f.under, g.under))

    def _memo(self, key, make):
        try:
            return self._coh_cache[key]
        except KeyError:
            out = self._coh_cache[key] = make()
            return out

    def u_l(self, P):
        return self._memo(("l", P), lambda: Morph(self.tensor(self.unit(self.arity(P)), P), P, self.M.u_l(P.X)))

    def u_r(self, P):
        return self._memo(("r", P), lambda: Morph(self.tensor(P, self.unit(self.arity(P))), P, self.M.u_r(P.X)))

    def ass(self, P, Q, R):
        return self._memo(("a", P, Q, R), lambda: Morph(
            self.tensor(self.tensor(P, Q), R), self.tensor(P, self.tensor(Q, R)), self.M.ass(P.X, Q.X, R.X)))

    def inverse(self, f):
        return Morph(f.dst, f.src, self.M.inverse(f.under))

    def is_iso(self, f):
        return self.M.is_iso(f.under)

    def elements(self, P):
        return self.M.elements(P.X)

    def apply(self, f, e):
        return self.M.apply(f.under, e)

    def factor(self, e, h):
        u = self.M.factor(e.under, h.under)
        return None if u is None else Morph(e.dst, h.dst, u)

    def label(self, x):
        if isinstance(x, Morph):
            return f"<{self.label(x.src)}>{self.M.label(x.under)}<{self.label(x.dst)}>"
        return f"({self.M.label(x.X)}|{self.M.label(x.x)})"


class Pointed(_Wrapper):
    """Pt(E): objects (X, x: I(A X) → X), point-preserving morphisms,
    tensor (X⊗Y, (x⊗y)∘u_l⁻¹) and unit (I(B), 1)."""

    def __init__(self, M: MonoidalOvercategory, name: str = ""):
        super().__init__(M)
        self.base = M.base
        self.name = name or f"Pt({M.name})"

    def objects(self, max_size=None, B=None):
        out = []
        for X in self.M.objects(max_size, B):
            A = self.M.arity(X)
            for x in self.M.hom(self.M.unit(A), X, over=self.base.id(A)):
                out.append(PointedObject(X, x))
        return out

    def is_morphism(self, f):
        b = self.M.arity_mor(f.under)
        return self.M.compose(f.under, f.src.x) == self.M.compose(f.dst.x, self.M.unit_mor(b))

    def hom(self, P, Q, over=None):
        out = []
        for f in self.M.hom(P.X, Q.X, over):
            m = Morph(P, Q, f)
            if self.is_morphism(m):
                out.append(m)
        return out

    def arity(self, P):
        return self.M.arity(P.X)

    def arity_mor(self, f):
        return self.M.arity_mor(f.under)

    def _tensor(self, P, Q):
        I = self.M.unit(self.M.arity(P.X))
        point = self.M.compose(self.M.tensor_mor(P.x, Q.x), self.M.inverse(self.M.u_l(I)))
        return PointedObject(self.M.tensor(P.X, Q.X), point)

    def unit(self, B):
        I = self.M.unit(B)
        return PointedObject(I, self.M.identity(I))

    def unit_mor(self, b):
        return Morph(self.unit(self.base.src(b)), self.unit(self.base.dst(b)), self.M.unit_mor(b))

    def coequalizer(self, f, g):
        Q, q = self.M.coequalizer(f.under, g.under)
        Z = f.dst
        PQ = PointedObject(Q, self.M.compose(q, Z.x))
        return PQ, Morph(Z, PQ, q)

    def point_of(self, X, element) -> PointedObject:
        """The pointed object (X, x) whose point picks ``element``."""
        A = self.M.arity(X)
        for x in self.M.hom(self.M.unit(A), X, over=self.base.id(A)):
            if set(self.M.apply(x, e) for e in self.M.elements(self.M.unit(A))) == {element}:
                return PointedObject(X, x)
        raise ValueError(f"no point of {self.M.label(X)} at {element!r}")


class Slice(_Wrapper):
    """E/C for an overmonoid C: objects (X, x: X → C) over G/C0 via A(x),
    tensor (X⊗Y, m(x⊗y)) and unit Î(k) = e∘I(k)."""

    def __init__(self, M: MonoidalOvercategory, C: "Overmonoid", name: str = ""):
        super().__init__(M)
        self.C = C
        self.base, self.base_projection = slice_category(M.base, C.C0)
        self._base_parts = {}
        G = M.base
        for k in self.base.objects:
            for u in G.into(G.src(k)):
                pid = pair_id(k, u)
                if self.base.has_morphism(pid):
                    self._base_parts[pid] = (k, u)
        self.name = name or f"{M.name}/{M.label(C.C)}"

    def objects(self, max_size=None, B=None):
        out = []
        for X in self.M.objects(max_size):
            for x in self.M.hom(X, self.C.C):
                if B is None or self.M.arity_mor(x) == B:
                    out.append(SliceObject(X, x))
        return out

    def is_morphism(self, f):
        return self.M.compose(f.dst.x, f.under) == f.src.x

    def hom(self, P, Q, over=None):
        u = None if over is None else self._base_parts[over][1]
        out = []
        for f in self.M.hom(P.X, Q.X, u):
            m = Morph(P, Q, f)
            if self.is_morphism(m):
                out.append(m)
        return out

    def arity(self, P):
        return self.M.arity_mor(P.x)

    def arity_mor(self, f):
        return pair_id(self.M.arity_mor(f.dst.x), self.M.arity_mor(f.under))

    def _tensor(self, P, Q):
        return SliceObject(self.M.tensor(P.X, Q.X), self.M.compose(self.C.m, self.M.tensor_mor(P.x, Q.x)))

    def unit(self, k):
        B = self.M.base.src(k)
        return SliceObject(self.M.unit(B), self.M.compose(self.C.e, self.M.unit_mor(k)))

    def unit_mor(self, s):
        k, u = self._base_parts[s]
        return Morph(self.unit(self.M.base.comp(k, u)), self.unit(k), self.M.unit_mor(u))

    def coequalizer(self, f, g):
        Q, q = self.M.coequalizer(f.under, g.under)
        Z = f.dst
        s = self.M.factor(q, Z.x)
        if s is None:
            raise CoequalizerUnavailable("structure map does not descend to the quotient")
        SQ = SliceObject(Q, s)
        return SQ, Morph(Z, SQ, q)


class FiberInstance(MonoidalOvercategory):
    """The fiber over B as a monoidal overcategory over the terminal base."""

    def __init__(self, M: MonoidalOvercategory, B: str):
        from .fincat import terminal_category

        self.M, self.B = M, B
        self.base = terminal_category()
        self.name = f"{M.name}[{B}]"

    def objects(self, max_size=None, B=None):
        return self.M.objects(max_size, self.B)

    def hom(self, X, Y, over=None):
        return self.M.hom(X, Y, over=self.M.base.id(self.B))

    def dom(self, f):
        return self.M.dom(f)

    def cod(self, f):
        return self.M.cod(f)

    def arity(self, X):
        return "*"

    def arity_mor(self, f):
        return "id_*"

    def compose(self, g, f):
        return self.M.compose(g, f)

    def identity(self, X):
        return self.M.identity(X)

    def tensor(self, X, Y):
        return self.M.tensor(X, Y)

    def tensor_mor(self, f, g):
        return self.M.tensor_mor(f, g)

    def unit(self, B):
        return self.M.unit(self.B)

    def unit_mor(self, b):
        return self.M.unit_mor(self.M.base.id(self.B))

    def u_l(self, X):
        return self.M.u_l(X)

    def u_r(self, X):
        return self.M.u_r(X)

    def ass(self, X, Y, Z):
        return self.M.ass(X, Y, Z)

    def inverse(self, f):
        return self.M.inverse(f)

    def is_iso(self, f):
        return self.M.is_iso(f)

    def label(self, x):
        return self.M.label(x)

    def is_morphism(self, f):
        return self.M.is_morphism(f) and self.M.vertical(f)


# ---------------------------------------------------------------------------
# validation


def _fibers(M, objs):
    out = {}
    for X in objs:
        out.setdefault(M.arity(X), []).append(X)
    return out


def validate_monoidal_overcategory(M: MonoidalOvercategory, max_size: int = 3, natural_size: int = 2) -> ValidationReport:
    """Exhaustive checks on all objects up to the given sizes.

    Pentagon and triangle run on every tuple of objects of size ≤ max_size
    in a common fiber; functoriality and naturality on size ≤ natural_size.
    """
    rep = ValidationReport()
    L = M.label
    G = M.base
    # unit is a functor and a section of the arity
    for B in G.objects:
        I = M.unit(B)
        if M.arity(I) != B:
            rep.add("unit.section", B)
        if M.unit_mor(G.id(B)) != M.identity(I):
            rep.add("unit.identity", B)
    for b in G.morphisms:
        Ib = M.unit_mor(b.id)
        if M.arity_mor(Ib) != b.id or M.dom(Ib) != M.unit(b.src) or M.cod(Ib) != M.unit(b.dst):
            rep.add("unit.section", b.id)
        if not M.is_morphism(Ib):
            rep.add("unit.wellformed", b.id)
        for c in G.out_of(b.dst):
            if M.unit_mor(G.comp(c, b.id)) != M.compose(M.unit_mor(c), Ib):
                rep.add("unit.composite", c, b.id)
    small = M.objects(natural_size)
    big = M.objects(max_size)
    fib_small, fib_big = _fibers(M, small), _fibers(M, big)

    def check_cell(law, cell, src, dst, *names):
        if M.dom(cell) != src or M.cod(cell) != dst:
            rep.add(f"{law}.type", *names)
        elif not M.vertical(cell):
            rep.add(f"{law}.vertical", *names)
        elif not M.is_iso(cell):
            rep.add(f"{law}.iso", *names)
        elif not M.is_morphism(cell):
            rep.add(f"{law}.wellformed", *names)

    for B, objs in fib_big.items():
        I = M.unit(B)
        for X in objs:
            check_cell("u_l", M.u_l(X), M.tensor(I, X), X, L(X))
            check_cell("u_r", M.u_r(X), M.tensor(X, I), X, L(X))
            for Y in objs:
                XY = M.tensor(X, Y)
                if M.arity(XY) != B:
                    rep.add("tensor.arity", L(X), L(Y))
                if M.tensor_mor(M.identity(X), M.identity(Y)) != M.identity(XY):
                    rep.add("tensor.identity", L(X), L(Y))
                for Z in objs:
                    check_cell("ass", M.ass(X, Y, Z), M.tensor(XY, Z), M.tensor(X, M.tensor(Y, Z)), L(X), L(Y), L(Z))
        if rep.laws() & {"ass.type", "u_l.type", "u_r.type"}:
            return rep
        for X in objs:
            for Y in objs:
                # triangle: (1⊗u_l)∘ass = u_r⊗1
                lhs = M.compose(M.tensor_mor(M.identity(X), M.u_l(Y)), M.ass(X, I, Y))
                if lhs != M.tensor_mor(M.u_r(X), M.identity(Y)):
                    rep.add("triangle", L(X), L(Y))
        ids = {X: M.identity(X) for X in objs}
        for W in objs:
            for X in objs:
                WX = M.tensor(W, X)
                for Y in objs:
                    XY = M.tensor(X, Y)
                    a_wxy = M.ass(W, X, Y)
                    for Z in objs:
                        lhs = M.compose_all(
                            M.tensor_mor(ids[W], M.ass(X, Y, Z)),
                            M.ass(W, XY, Z),
                            M.tensor_mor(a_wxy, ids[Z]),
                        )
                        rhs = M.compose(M.ass(W, X, M.tensor(Y, Z)), M.ass(WX, Y, Z))
                        if lhs != rhs:
                            rep.add("pentagon", L(W), L(X), L(Y), L(Z))
    # naturality and functoriality over every base morphism
    by_base = {}
    for X in small:
        for Y in small:
            for f in M.hom(X, Y):
                if not M.is_morphism(f):
                    rep.add("hom.wellformed", L(f))
                by_base.setdefault(M.arity_mor(f), []).append(f)
    for b, fs in by_base.items():
        Ib = M.unit_mor(b)
        for f in fs:
            X, Y = M.dom(f), M.cod(f)
            if M.compose(M.u_l(Y), M.tensor_mor(Ib, f)) != M.compose(f, M.u_l(X)):
                rep.add("u_l.naturality", L(f))
            if M.compose(M.u_r(Y), M.tensor_mor(f, Ib)) != M.compose(f, M.u_r(X)):
                rep.add("u_r.naturality", L(f))
        pairs = [[M.tensor_mor(f, g) for g in fs] for f in fs]
        for i, f in enumerate(fs):
            for j, g in enumerate(fs):
                fg = pairs[i][j]
                if M.arity_mor(fg) != b:
                    rep.add("tensor.arity", L(f), L(g))
                for k, h in enumerate(fs):
                    lhs = M.compose(M.ass(M.cod(f), M.cod(g), M.cod(h)), M.tensor_mor(fg, h))
                    rhs = M.compose(M.tensor_mor(f, pairs[j][k]), M.ass(M.dom(f), M.dom(g), M.dom(h)))
                    if lhs != rhs:
                        rep.add("ass.naturality", L(f), L(g), L(h))
    for b, fs in by_base.items():
        for c in M.base.out_of(M.base.dst(b)):
            gs = by_base.get(c, [])
            for f1 in fs:
                for g1 in gs:
                    if M.cod(f1) != M.dom(g1):
                        continue
                    for f2 in fs:
                        for g2 in gs:
                            if M.cod(f2) != M.dom(g2):
                                continue
                            lhs = M.compose(M.tensor_mor(g1, g2), M.tensor_mor(f1, f2))
                            if lhs != M.tensor_mor(M.compose(g1, f1), M.compose(g2, f2)):
                                rep.add("tensor.composite", L(g1), L(f1), L(g2), L(f2))
    return rep


def validate_fibers(M: MonoidalOvercategory, max_size: int = 3, natural_size: int = 2) -> dict:
    """Each fiber re-validated as a monoidal category on its own."""
    return {B: validate_monoidal_overcategory(FiberInstance(M, B), max_size, natural_size) for B in M.base.objects}


# ---------------------------------------------------------------------------
# overmonoids


@dataclass(frozen=True)
class Overmonoid:
    """(C, m, e; C0): a monoid in the fiber over C0."""
    C: Any
    m: Any
    e: Any
    C0: str


@dataclass(frozen=True)
class MonoidMorphism:
    """(f, f0) with f m = m'(f⊗f) and f e = e' I(f0)."""
    src: Overmonoid
    dst: Overmonoid
    f: Any


def validate_overmonoid(M: MonoidalOvercategory, mon: Overmonoid) -> ValidationReport:
    rep = ValidationReport()
    C, m, e, B = mon.C, mon.m, mon.e, mon.C0
    I = M.unit(B)
    if M.dom(m) != M.tensor(C, C) or M.cod(m) != C or not M.vertical(m) or M.arity(C) != B:
        rep.add("m.type", M.label(m))
    if M.dom(e) != I or M.cod(e) != C or not M.vertical(e):
        rep.add("e.type", M.label(e))
    if not rep.ok:
        return rep
    one = M.identity(C)
    if M.compose(m, M.tensor_mor(e, one)) != M.u_l(C):
        rep.add("left_unit", M.label(C))
    if M.compose(m, M.tensor_mor(one, e)) != M.u_r(C):
        rep.add("right_unit", M.label(C))
    lhs = M.compose(m, M.tensor_mor(m, one))
    rhs = M.compose_all(m, M.tensor_mor(one, m), M.ass(C, C, C))
    if lhs != rhs:
        rep.add("associativity", M.label(C))
    return rep


def is_monoid_morphism(M: MonoidalOvercategory, h: MonoidMorphism) -> bool:
    f, S, T = h.f, h.src, h.dst
    if M.dom(f) != S.C or M.cod(f) != T.C:
        return False
    if M.compose(f, S.m) != M.compose(T.m, M.tensor_mor(f, f)):
        return False
    return M.compose(f, S.e) == M.compose(T.e, M.unit_mor(M.arity_mor(f)))


def unit_overmonoid(M: MonoidalOvercategory, B: str) -> Overmonoid:
    """(I(B), u, 1; B)."""
    I = M.unit(B)
    return Overmonoid(I, M.u_l(I), M.identity(I), B)


def enumerate_overmonoids(M: MonoidalOvercategory, max_size: int = 3, budget: int | None = None) -> list[Overmonoid]:
    """All overmonoid structures on objects of size ≤ max_size."""
    budget = default_budget() if budget is None else budget
    seen = 0
    out = []
    for C in M.objects(max_size):
        B = M.arity(C)
        one_B = M.base.id(B)
        I = M.unit(B)
        CC = M.tensor(C, C)
        one = M.identity(C)
        for e in M.hom(I, C, over=one_B):
            e1 = M.tensor_mor(e, one)
            e2 = M.tensor_mor(one, e)
            ul, ur = M.u_l(C), M.u_r(C)
            for m in M.hom(CC, C, over=one_B):
                seen += 1
                if seen > budget:
                    raise BudgetExceeded("overmonoid enumeration", budget)
                if M.compose(m, e1) != ul or M.compose(m, e2) != ur:
                    continue
                mon = Overmonoid(C, m, e, B)
                if validate_overmonoid(M, mon).ok:
                    out.append(mon)
    return out


@dataclass
class MonCategory:
    """/Mon(E, A) as a finite overcategory plus the values behind its ids."""
    ov: Overcategory
    monoids: dict
    morphisms: dict

    def id_of(self, mon: Overmonoid) -> str | None:
        return self._ids.get(mon)

    def __post_init__(self):
        self._ids = {v: k for k, v in self.monoids.items()}
        self._mor_ids = {(v.src, v.dst, v.f): k for k, v in self.morphisms.items()}

    def morphism_id(self, h: MonoidMorphism) -> str | None:
        return self._mor_ids.get((h.src, h.dst, h.f))


def overmonoid_category(M: MonoidalOvercategory, max_size: int = 3, budget: int | None = None) -> MonCategory:
    """Enumerate overmonoids and the pairs (f, f0) between them."""
    mons = enumerate_overmonoids(M, max_size, budget)
    ids = {f"M{i}": mon for i, mon in enumerate(mons)}
    morphisms = {}
    identity = {}
    for si, S in ids.items():
        for ti, T in ids.items():
            k = 0
            for f in M.hom(S.C, T.C):
                h = MonoidMorphism(S, T, f)
                if is_monoid_morphism(M, h):
                    mid = f"{si}>{ti}#{k}"
                    k += 1
                    morphisms[mid] = h
                    if si == ti and f == M.identity(S.C):
                        identity[si] = mid
    lookup = {(h.src, h.dst, h.f): mid for mid, h in morphisms.items()}
    by_src = {}
    for mid, h in morphisms.items():
        by_src.setdefault(h.src, []).append(mid)
    compose = {}
    for fid, h in morphisms.items():
        for gid in by_src.get(h.dst, []):
            g = morphisms[gid]
            compose[gid, fid] = lookup[(h.src, g.dst, M.compose(g.f, h.f))]
    src_id = {v: k for k, v in ids.items()}
    total = FinCat(list(ids), [Morphism(mid, src_id[h.src], src_id[h.dst]) for mid, h in morphisms.items()],
                   identity, compose, name=f"Mon({M.name})")
    arity = FunctorData(total, M.base, {k: v.C0 for k, v in ids.items()},
                        {mid: M.arity_mor(h.f) for mid, h in morphisms.items()})
    return MonCategory(Overcategory(total, M.base, arity, name=total.name), ids, morphisms)


# ---------------------------------------------------------------------------
# slice and pointed constructions


def slice_monoidal(M: MonoidalOvercategory, C: Overmonoid, max_size: int = 2) -> tuple[Slice, dict]:
    """E/C with its validation and the forgetful strict morphism check."""
    rep = validate_overmonoid(M, C)
    if not rep.ok:
        raise ValueError(f"not an overmonoid: {rep.violations[0]}")
    S = Slice(M, C)
    val = validate_monoidal_overcategory(S, max_size=max_size, natural_size=min(max_size, 2))
    forget = True
    proj = S.base_projection
    objs = S.objects(max_size)
    for P in objs:
        if M.arity(P.X) != proj.ob(S.arity(P)):
            forget = False
        for Q in objs:
            if S.arity(P) == S.arity(Q) and S.tensor(P, Q).X != M.tensor(P.X, Q.X):
                forget = False
    for k in S.base.objects:
        if S.unit(k).X != M.unit(M.base.src(k)):
            forget = False
    return S, {"validation": val, "forgetful_strict": forget, "objects": len(objs), "ok": val.ok and forget}


def pointed_monoidal(M: MonoidalOvercategory, max_size: int = 3) -> tuple[Pointed, dict]:
    """Pt(E) with its validation and the initiality of Ĩ in every fiber."""
    P = Pointed(M)
    val = validate_monoidal_overcategory(P, max_size=max_size, natural_size=min(max_size, 2))
    initial = {}
    for B in M.base.objects:
        I = P.unit(B)
        initial[B] = all(len(P.hom(I, X, over=M.base.id(B))) == 1 for X in P.objects(max_size, B))
    return P, {"validation": val, "unit_initial": initial, "ok": val.ok and all(initial.values())}


@dataclass
class StrictMorphism:
    """h*: E/C → E/C', (X, x) ↦ (X, h∘x), with base map k ↦ h0∘k."""
    h: MonoidMorphism
    dom: Slice
    cod: Slice
    report: dict = field(default_factory=dict)

    def ob(self, P: SliceObject) -> SliceObject:
        return SliceObject(P.X, self.dom.M.compose(self.h.f, P.x))

    def mor(self, f: Morph) -> Morph:
        return Morph(self.ob(f.src), self.ob(f.dst), f.under)

    def base_ob(self, k: str) -> str:
        return self.dom.M.base.comp(self.dom.M.arity_mor(self.h.f), k)


def induced_strict_morphism(M: MonoidalOvercategory, h: MonoidMorphism, max_size: int = 2,
                            witnesses: list | None = None) -> StrictMorphism:
    """Build h* and verify strictness, base compatibility and coequalizer
    preservation on the witness pairs (default: all parallel pairs of small
    vertical slice morphisms)."""
    if not is_monoid_morphism(M, h):
        raise ValueError("not an overmonoid morphism")
    S1, S2 = Slice(M, h.src), Slice(M, h.dst)
    hs = StrictMorphism(h, S1, S2)
    objs = S1.objects(max_size)
    rep = {"tensor": True, "unit": True, "arity": True, "morphisms": True, "coequalizers": True, "failing": None}

    def fail(key, *w):
        rep[key] = False
        rep["failing"] = rep["failing"] or {"law": key, "witness": list(w)}

    for P in objs:
        if S2.arity(hs.ob(P)) != hs.base_ob(S1.arity(P)):
            fail("arity", S1.label(P))
        for Q in objs:
            if S1.arity(P) != S1.arity(Q):
                continue
            if hs.ob(S1.tensor(P, Q)) != S2.tensor(hs.ob(P), hs.ob(Q)):
                fail("tensor", S1.label(P), S1.label(Q))
            for f in S1.hom(P, Q):
                if not S2.is_morphism(hs.mor(f)):
                    fail("morphisms", S1.label(f))
    for k in S1.base.objects:
        if hs.ob(S1.unit(k)) != S2.unit(hs.base_ob(k)):
            fail("unit", k)
    if witnesses is None:
        witnesses = standard_witnesses(S1, max_size)
    for f, g in witnesses:
        try:
            Q1, q1 = S1.coequalizer(f, g)
            Q2, q2 = S2.coequalizer(hs.mor(f), hs.mor(g))
        except CoequalizerUnavailable as exc:
            fail("coequalizers", str(exc))
            continue
        if hs.ob(Q1) != Q2 or hs.mor(q1) != q2:
            fail("coequalizers", S1.label(f), S1.label(g))
    rep["witnesses"] = len(witnesses)
    rep["ok"] = all(rep[k] for k in ("tensor", "unit", "arity", "morphisms", "coequalizers"))
    hs.report = rep
    return hs


def phi_isomorphism(M: MonoidalOvercategory, max_size: int = 3, budget: int | None = None) -> dict:
    """φ: /Mon(E) → /Mon(Pt E), (C, m, e) ↦ ((C, e), m, e), against an
    independent enumeration of /Mon(Pt E); checks inverse and U = U'∘φ."""
    P = Pointed(M)
    mon = overmonoid_category(M, max_size, budget)
    pmon = overmonoid_category(P, max_size, budget)

    def phi(c: Overmonoid) -> Overmonoid:
        C = PointedObject(c.C, c.e)
        return Overmonoid(C, Morph(P.tensor(C, C), C, c.m), Morph(P.unit(c.C0), C, c.e), c.C0)

    def phi_inv(c: Overmonoid) -> Overmonoid:
        return Overmonoid(c.C.X, c.m.under, c.e.under, c.C0)

    obj_map, mor_map = {}, {}
    missing = []
    for cid, c in mon.monoids.items():
        target = pmon.id_of(phi(c))
        if target is None:
            missing.append(cid)
        obj_map[cid] = target
    for mid, h in mon.morphisms.items():
        image = MonoidMorphism(phi(h.src), phi(h.dst), Morph(phi(h.src).C, phi(h.dst).C, h.f))
        mor_map[mid] = pmon.morphism_id(image)
        if mor_map[mid] is None:
            missing.append(mid)
    objects_bijective = not missing and sorted(v for v in obj_map.values()) == sorted(pmon.monoids)
    morphisms_bijective = not missing and sorted(v for v in mor_map.values()) == sorted(pmon.morphisms)
    round_trip = all(phi_inv(phi(c)) == c for c in mon.monoids.values()) and all(
        phi(phi_inv(c)) == c for c in pmon.monoids.values())
    T = mon.ov.total
    functor = not missing and all(
        mor_map[T.comp(g, f)] == pmon.ov.total.comp(mor_map[g], mor_map[f]) for (g, f) in T.compose_table)
    functor = functor and all(mor_map[T.identity[x]] == pmon.ov.total.identity[obj_map[x]] for x in T.objects)
    # U(C, m, e) = (C, e) and U'((C, x), e, m) = (C, e)
    triangle = True
    for cid, c in mon.monoids.items():
        if obj_map[cid] is None or PointedObject(c.C, c.e) != PointedObject(pmon.monoids[obj_map[cid]].C.X, pmon.monoids[obj_map[cid]].e.under):
            triangle = False
    for mid, h in mon.morphisms.items():
        if mor_map[mid] is None or pmon.morphisms[mor_map[mid]].f.under != h.f:
            triangle = False
    arity = not missing and all(pmon.ov.arity.ob(obj_map[c]) == mon.ov.arity.ob(c) for c in mon.monoids)
    ok = objects_bijective and morphisms_bijective and round_trip and functor and triangle and arity
    return {
        "objects": len(mon.monoids),
        "pointed_objects": len(pmon.monoids),
        "morphisms": len(mon.morphisms),
        "pointed_morphisms": len(pmon.morphisms),
        "objects_bijective": objects_bijective,
        "morphisms_bijective": morphisms_bijective,
        "functor": bool(functor),
        "round_trip": round_trip,
        "triangle": triangle,
        "arity": bool(arity),
        "missing": missing,
        "object_map": obj_map,
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# liberality


def standard_witnesses(M: MonoidalOvercategory, max_size: int = 2) -> list[tuple]:
    """Every unordered pair of distinct parallel vertical maps between
    objects of size ≤ max_size."""
    out = []
    for B, objs in _fibers(M, M.objects(max_size)).items():
        one = M.base.id(B)
        for Y in objs:
            for Z in objs:
                fs = M.hom(Y, Z, over=one)
                for i, f in enumerate(fs):
                    for g in fs[i + 1:]:
                        out.append((f, g))
    return out


def verify_coequalizer(M: MonoidalOvercategory, f, g, q, targets: list, inclusion: bool = True) -> dict | None:
    """Brute-force universality of q among coforks into ``targets``.

    With ``inclusion`` the coforks may sit over any base morphism, which
    checks that the fiber coequalizer stays a coequalizer in E. Returns
    None when universal, else a witness.
    """
    Z, Q = M.cod(f), M.cod(q)
    if M.compose(q, f) != M.compose(q, g):
        return {"reason": "not_a_cofork"}
    B = M.arity(Z)
    for W in targets:
        if inclusion:
            bases = M.base.hom(B, M.arity(W))
        else:
            bases = [M.base.id(B)] if M.arity(W) == B else []
        for b in bases:
            for h in M.hom(Z, W, over=b):
                if M.compose(h, f) != M.compose(h, g):
                    continue
                n = sum(1 for u in M.hom(Q, W, over=b) if M.compose(u, q) == h)
                if n != 1:
                    return {"reason": "factorizations", "target": M.label(W), "cofork": M.label(h), "count": n}
    return None


def _preserved(M, f, g, q, W, side):
    if side == "right":
        tf, tg, tq = (M.tensor_mor(x, M.identity(W)) for x in (f, g, q))
    else:
        tf, tg, tq = (M.tensor_mor(M.identity(W), x) for x in (f, g, q))
    _Q2, q2 = M.coequalizer(tf, tg)
    u = M.factor(q2, tq)
    return u is not None and M.is_iso(u) and M.compose(tq, tf) == M.compose(tq, tg)


def liberality_report(M: MonoidalOvercategory, witnesses: list | None = None, max_size: int = 2,
                      chain_levels: int = 3) -> dict:
    """Per-fiber, witness-relative liberality verdicts.

    For each witness pair the coequalizer must exist, be universal in its
    fiber and in E, and be preserved by tensoring on either side with every
    object of size ≤ max_size. Chains come from the free-monoid recursion on
    each small object; a stabilized chain is preserved by tensoring exactly
    when the tensored inclusion is invertible, a non-stabilized one is
    reported as truncated.
    """
    from .freemonoid import build_graded_chain

    if witnesses is None:
        witnesses = standard_witnesses(M, max_size)
    everything = M.objects(max_size)
    fibers = {B: {"coequalizers": 0, "exists": True, "universal": True, "inclusion": True,
                  "tensor_right": True, "tensor_left": True, "chains": []} for B in M.base.objects}
    failing = None
    for f, g in witnesses:
        B = M.arity(M.cod(f))
        v = fibers[B]
        v["coequalizers"] += 1
        wit = {"fiber": B, "f": M.label(f), "g": M.label(g)}
        try:
            _Q, q = M.coequalizer(f, g)
        except CoequalizerUnavailable:
            v["exists"] = False
            failing = failing or dict(wit, law="exists")
            continue
        local = [W for W in everything if M.arity(W) == B]
        if verify_coequalizer(M, f, g, q, local, inclusion=False) is not None:
            v["universal"] = False
            failing = failing or dict(wit, law="universal")
        if verify_coequalizer(M, f, g, q, everything, inclusion=True) is not None:
            v["inclusion"] = False
            failing = failing or dict(wit, law="inclusion")
        for W in local:
            for side in ("right", "left"):
                if not _preserved(M, f, g, q, W, side):
                    v[f"tensor_{side}"] = False
                    failing = failing or dict(wit, law=f"tensor_{side}", object=M.label(W))
    for B, v in fibers.items():
        local = [W for W in everything if M.arity(W) == B]
        for X in local:
            try:
                chain = build_graded_chain(M, X, chain_levels)
            except OvercatError as exc:
                v["chains"].append({"object": M.label(X), "status": f"unavailable: {type(exc).__name__}"})
                continue
            entry = {"object": M.label(X), "status": chain.status}
            if chain.stabilized_at is not None:
                iota = chain.iota[chain.stabilized_at]
                entry["preserved"] = all(
                    M.is_iso(M.tensor_mor(iota, M.identity(W))) and M.is_iso(M.tensor_mor(M.identity(W), iota))
                    for W in local)
                if not entry["preserved"]:
                    failing = failing or {"fiber": B, "law": "chain", "object": M.label(X)}
            v["chains"].append(entry)
        v["liberal"] = all(v[k] for k in ("exists", "universal", "inclusion", "tensor_right", "tensor_left")) and all(
            c.get("preserved", True) for c in v["chains"])
    return {
        "instance": M.name,
        "budget": {"max_size": max_size, "chain_levels": chain_levels, "witnesses": len(witnesses)},
        "fibers": fibers,
        "failing": failing,
        "liberal": all(v["liberal"] for v in fibers.values()),
    }


# ---------------------------------------------------------------------------
# finite table views


def to_overcategory(M: MonoidalOvercategory, objects: list, name: str = "") -> tuple[Overcategory, dict, dict]:
    """The full subcategory on ``objects`` as a finite overcategory.

    Returns the overcategory and the id → value maps for objects and
    morphisms.
    """
    obj_ids = {M.label(X): X for X in objects}
    mor_ids = {}
    identity = {}
    for X in objects:
        for Y in objects:
            for f in M.hom(X, Y):
                mor_ids[M.label(f)] = f
        identity[M.label(X)] = M.label(M.identity(X))
    by_src = {}
    for fid, f in mor_ids.items():
        by_src.setdefault(M.label(M.dom(f)), []).append(fid)
    compose = {}
    for fid, f in mor_ids.items():
        for gid in by_src.get(M.label(M.cod(f)), []):
            compose[gid, fid] = M.label(M.compose(mor_ids[gid], f))
    total = FinCat(list(obj_ids), [Morphism(fid, M.label(M.dom(f)), M.label(M.cod(f))) for fid, f in mor_ids.items()],
                   identity, compose, name=name or M.name)
    arity = FunctorData(total, M.base, {k: M.arity(X) for k, X in obj_ids.items()},
                        {k: M.arity_mor(f) for k, f in mor_ids.items()})
    return Overcategory(total, M.base, arity, name=total.name), obj_ids, mor_ids
