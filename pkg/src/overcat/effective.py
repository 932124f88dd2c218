"""Effective monoidal overcategories: finite labelled sets over a finite base.

``FinSetOver(G, "coproduct")`` is FinSet×G with fiberwise disjoint union and
unit (∅, B); ``FinSetOver(G, "cartesian")`` uses fiberwise product and unit
({*}, B). Quotients label each class by its least element, so every table
the engine emits is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian

from .errors import ArityViolation, UsageError
from .fincat import FinCat, chain, terminal_category
from .monoidal import MonoidalOvercategory, Pointed, memo_hash
from .unionfind import UnionFind, sort_elements

STAR = "*"


def fmt(e) -> str:
    if isinstance(e, tuple):
        return "(" + ",".join(fmt(x) for x in e) + ")"
    return str(e)


@memo_hash
@dataclass(frozen=True)
class FSet:
    """A finite set of element labels sitting over a base object."""
    elements: tuple
    base: str

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def label(self) -> str:
        return "{" + ",".join(fmt(e) for e in self.elements) + "}@" + self.base


@memo_hash
@dataclass(frozen=True)
class Fn:
    """A function between finite sets over a base morphism; ``images`` lists
    the image of each source element in source order."""
    src: FSet
    dst: FSet
    images: tuple
    over: str

    def __call__(self, e):
        return self.images[self.src.index[e]]

    def as_dict(self) -> dict:
        return dict(zip(self.src.elements, self.images))

    def label(self) -> str:
        body = ",".join(fmt(e) for e in self.images)
        return f"{self.src.label()}>{self.dst.label()}[{body}]/{self.over}"


def make_set(elements, B: str) -> FSet:
    return FSet(sort_elements(elements), B)


class FinSetOver(MonoidalOvercategory):
    """FinSet×G with a fiberwise coproduct or cartesian tensor."""

    def __init__(self, G: FinCat, mode: str = "coproduct", name: str = ""):
        if mode not in ("coproduct", "cartesian"):
            raise ValueError(f"unknown tensor mode {mode!r}")
        self.base = G
        self.mode = mode
        self.name = name or f"FinSetx{G.name or 'G'}-{mode}"
        self._tensor_cache = {}
        self._tensor_mor_cache = {}

    # -- construction helpers ----------------------------------------------------
    def obj(self, elements, B: str | None = None) -> FSet:
        return make_set(elements, B if B is not None else self.base.objects[0])

    def fn(self, src: FSet, dst: FSet, mapping, over: str | None = None) -> Fn:
        get = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        images = tuple(get(e) for e in src.elements)
        if any(y not in dst.index for y in images):
            raise ValueError("function leaves its codomain")
        over = over if over is not None else self.base.id(src.base)
        if self.base.src(over) != src.base or self.base.dst(over) != dst.base:
            raise ArityViolation(f"{over} does not go from {src.base} to {dst.base}")
        return Fn(src, dst, images, over)

    # -- category ------------------------------------------------------------
    def objects(self, max_size=None, B=None):
        n = 3 if max_size is None else max_size
        bases = [B] if B is not None else self.base.objects
        return [FSet(tuple(range(k)), b) for b in bases for k in range(n + 1)]

    def hom(self, X, Y, over=None):
        bases = [over] if over is not None else self.base.hom(X.base, Y.base)
        out = []
        for b in bases:
            if self.base.src(b) != X.base or self.base.dst(b) != Y.base:
                continue
            for images in cartesian(Y.elements, repeat=len(X.elements)):
                out.append(Fn(X, Y, images, b))
        return out

    def dom(self, f):
        return f.src

    def cod(self, f):
        return f.dst

    def arity(self, X):
        return X.base

    def arity_mor(self, f):
        return f.over

    def compose(self, g, f):
        if g.src != f.dst:
            raise ValueError("composing non-composable functions")
        gi = g.src.index
        return Fn(f.src, g.dst, tuple(g.images[gi[y]] for y in f.images), self.base.comp(g.over, f.over))

    def identity(self, X):
        return Fn(X, X, X.elements, self.base.id(X.base))

    # -- tensor ----------------------------------------------------------------
    def _same_fiber(self, X, Y):
        if X.base != Y.base:
            raise ArityViolation(f"tensor of objects over {X.base} and {Y.base}")

    def tensor(self, X, Y):
        try:
            return self._tensor_cache[X, Y]
        except KeyError:
            out = self._tensor_cache[X, Y] = self._tensor(X, Y)
            return out

    def tensor_mor(self, f, g):
        try:
            return self._tensor_mor_cache[f, g]
        except KeyError:
            out = self._tensor_mor_cache[f, g] = self._tensor_mor(f, g)
            return out

    def _tensor(self, X, Y):
        # sorted inputs give sorted outputs, so no re-sort is needed
        self._same_fiber(X, Y)
        if self.mode == "coproduct":
            els = tuple((0, x) for x in X.elements) + tuple((1, y) for y in Y.elements)
        else:
            els = tuple((x, y) for x in X.elements for y in Y.elements)
        return FSet(els, X.base)

    def _tensor_mor(self, f, g):
        if f.over != g.over:
            raise ArityViolation(f"tensor of morphisms over {f.over} and {g.over}")
        src, dst = self.tensor(f.src, g.src), self.tensor(f.dst, g.dst)
        if self.mode == "coproduct":
            images = tuple((0, f(e[1])) if e[0] == 0 else (1, g(e[1])) for e in src.elements)
        else:
            images = tuple((f(e[0]), g(e[1])) for e in src.elements)
        return Fn(src, dst, images, f.over)

    def unit(self, B):
        return FSet(() if self.mode == "coproduct" else (STAR,), B)

    def unit_mor(self, b):
        src, dst = self.unit(self.base.src(b)), self.unit(self.base.dst(b))
        return Fn(src, dst, dst.elements[:len(src.elements)], b)

    def u_l(self, X):
        src = self.tensor(self.unit(X.base), X)
        return Fn(src, X, tuple(e[1] for e in src.elements), self.base.id(X.base))

    def u_r(self, X):
        src = self.tensor(X, self.unit(X.base))
        if self.mode == "coproduct":
            images = tuple(e[1] for e in src.elements)
        else:
            images = tuple(e[0] for e in src.elements)
        return Fn(src, X, images, self.base.id(X.base))

    def ass(self, X, Y, Z):
        src = self.tensor(self.tensor(X, Y), Z)
        dst = self.tensor(X, self.tensor(Y, Z))
        if self.mode == "coproduct":
            def move(e):
                if e[0] == 1:
                    return (1, (1, e[1]))
                inner = e[1]
                return (0, inner[1]) if inner[0] == 0 else (1, (0, inner[1]))
        else:
            def move(e):
                (x, y), z = e
                return (x, (y, z))
        return Fn(src, dst, tuple(move(e) for e in src.elements), self.base.id(X.base))

    # -- isomorphisms --------------------------------------------------------------
    def is_iso(self, f):
        return len(set(f.images)) == len(f.images) == len(f.dst.elements) and self.base.is_iso(f.over)

    def inverse(self, f):
        if not self.is_iso(f):
            raise ValueError("not a bijection over an isomorphism")
        back = {y: x for x, y in zip(f.src.elements, f.images)}
        return Fn(f.dst, f.src, tuple(back[y] for y in f.dst.elements), self.base.inverse(f.over))

    # -- effective extras ------------------------------------------------------------
    def elements(self, X):
        return X.elements

    def apply(self, f, e):
        return f(e)

    def coequalizer(self, f, g):
        """Quotient of cod(f) by the equivalence generated by f(y) ~ g(y)."""
        if f.src != g.src or f.dst != g.dst or f.over != g.over:
            raise ArityViolation("coequalizer of a non-parallel pair")
        Z = f.dst
        uf = UnionFind(Z.elements)
        for a, b in zip(f.images, g.images):
            uf.union(a, b)
        Q = FSet(uf.representatives(), Z.base)
        return Q, Fn(Z, Q, tuple(uf.find(z) for z in Z.elements), self.base.id(Z.base))

    def factor(self, e, h):
        if e.src != h.src:
            return None
        if len(set(e.images)) != len(e.dst.elements):
            return None
        if self.base.is_identity(e.over):
            over = h.over
        elif self.base.is_iso(e.over):
            over = self.base.comp(h.over, self.base.inverse(e.over))
        else:
            return None
        table = {}
        for x, q in zip(e.src.elements, e.images):
            y = h(x)
            if table.setdefault(q, y) != y:
                return None
        return Fn(e.dst, h.dst, tuple(table[q] for q in e.dst.elements), over)

    def label(self, x):
        return x.label()


class ContrivedTensor(FinSetOver):
    """X⊗Y = X×X×Y: a non-coherent tensor whose (−)⊗Y fails to preserve
    coequalizers; only used to exercise the red path of liberality."""

    def __init__(self, G: FinCat, name: str = ""):
        super().__init__(G, "cartesian", name=name or "contrived-cartesian")

    def _tensor(self, X, Y):
        self._same_fiber(X, Y)
        return FSet(sort_elements((a, b, y) for a in X.elements for b in X.elements for y in Y.elements), X.base)

    def _tensor_mor(self, f, g):
        if f.over != g.over:
            raise ArityViolation(f"tensor of morphisms over {f.over} and {g.over}")
        src, dst = self.tensor(f.src, g.src), self.tensor(f.dst, g.dst)
        return Fn(src, dst, tuple((f(a), f(b), g(y)) for a, b, y in src.elements), f.over)

    def u_l(self, X):
        src = self.tensor(self.unit(X.base), X)
        return Fn(src, X, tuple(e[2] for e in src.elements), self.base.id(X.base))

    def u_r(self, X):
        src = self.tensor(X, self.unit(X.base))
        return Fn(src, X, tuple(e[0] for e in src.elements), self.base.id(X.base))

    def ass(self, X, Y, Z):
        raise NotImplementedError("the contrived tensor has no associator")


# ---------------------------------------------------------------------------
# registry


def _g() -> FinCat:
    G = chain(2)
    G.name = "2"
    return G


INSTANCES = {
    "finset-coproduct": lambda: FinSetOver(terminal_category(), "coproduct", name="finset-coproduct"),
    "finset-cartesian": lambda: FinSetOver(terminal_category(), "cartesian", name="finset-cartesian"),
    "pt-finset-cartesian": lambda: Pointed(FinSetOver(terminal_category(), "cartesian", name="finset-cartesian"),
                                           name="pt-finset-cartesian"),
    "finsetxg-coproduct": lambda: FinSetOver(_g(), "coproduct", name="finsetxg-coproduct"),
    "finsetxg-cartesian": lambda: FinSetOver(_g(), "cartesian", name="finsetxg-cartesian"),
    "pt-finsetxg-cartesian": lambda: Pointed(FinSetOver(_g(), "cartesian", name="finsetxg-cartesian"),
                                             name="pt-finsetxg-cartesian"),
    "contrived-cartesian": lambda: ContrivedTensor(terminal_category()),
}


def get_instance(name: str) -> MonoidalOvercategory:
    try:
        return INSTANCES[name]()
    except KeyError:
        raise UsageError(f"unknown instance {name!r}; choose from {', '.join(sorted(INSTANCES))}") from None


def letters_object(inst: MonoidalOvercategory, letters, B: str | None = None):
    """The generating object for a list of letters: the set of letters in
    plain instances, the letters plus a basepoint ``*`` in pointed ones."""
    letters = list(letters)
    if STAR in letters:
        raise ValueError("'*' is reserved for the basepoint")
    if isinstance(inst, Pointed):
        base = inst.M
        X = base.obj([STAR, *letters], B)
        return inst.point_of(X, STAR)
    return inst.obj(letters, B)
