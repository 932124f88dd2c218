"""Bundled fixture corpus: categories, functors, mutation fixtures,
overcategories, adjunctions and overmonads used by tests, scripts and
the CLI."""
from __future__ import annotations

import itertools

from .adjunction import Adjunction
from .fincat import (
    FinCat,
    FunctorData,
    Morphism,
    NatTransData,
    chain,
    concrete_category,
    constant_functor,
    discrete,
    empty_category,
    finset,
    function_of,
    identity_functor,
    monoid_category,
    pair_id,
    poset,
    product,
    terminal_category,
    to_terminal,
)
from .monad import Overmonad
from .overcat import (
    Overcategory,
    OverfunctorData,
    identity_overfunctor,
    make_overcategory,
    over_terminal,
    overfunctor,
    shape,
)

# ---------------------------------------------------------------------------
# categories


def two() -> FinCat:
    return poset(["0", "1"], [("0", "1")], name="2")


def three_half() -> FinCat:
    """The poset 0 < ½ < 1, with ½ written ``h``."""
    return poset(["0", "h", "1"], [("0", "h"), ("h", "1")], name="3h")


def diamond() -> FinCat:
    return poset(["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")], name="diamond")


def square_lattice() -> FinCat:
    """The product 2×2 as a four-element Boolean lattice."""
    return poset(["00", "01", "10", "11"], [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")], name="2x2")


def idempotent_monoid() -> FinCat:
    """One object, morphisms {1, a} with a·a = a."""
    m = {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "a", ("a", "a"): "a"}
    return monoid_category(["1", "a"], m, "1", name="idem")


def z2() -> FinCat:
    m = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    return monoid_category(["e", "g"], m, "e", name="Z2")


def kleisli_top_closure() -> FinCat:
    """Kleisli category of T(x) = 1 on 0 < 1: two objects K(0), K(1) and a
    single arrow ``K(x<=1>y)`` between any two of them."""
    objs = ["K(0)", "K(1)"]
    base = {"K(0)": "0", "K(1)": "1"}

    def mid(x, y):
        return f"K({base[x]}<=1>{base[y]})"

    morphisms = [Morphism(mid(x, y), x, y) for x in objs for y in objs]
    compose = {(mid(y, z), mid(x, y)): mid(x, z) for x in objs for y in objs for z in objs}
    return FinCat(objs, morphisms, {x: mid(x, x) for x in objs}, compose, name="Kl")


def category_corpus() -> dict[str, FinCat]:
    return {
        "empty": empty_category(),
        "terminal": terminal_category(),
        "discrete2": discrete(["x", "y"], name="discrete2"),
        "chain2": two(),
        "chain3": chain(3),
        "three_half": three_half(),
        "diamond": diamond(),
        "square_lattice": square_lattice(),
        "parallel": shape("parallel"),
        "span": shape("span"),
        "idempotent_monoid": idempotent_monoid(),
        "z2": z2(),
        "finset012": finset([0, 1, 2]),
        "finset0123": finset([0, 1, 2, 3]),
        "kleisli": kleisli_top_closure(),
        "chain2_x_chain2": product(two(), two())[0],
    }


# ---------------------------------------------------------------------------
# functors


def inclusion_two_three() -> FunctorData:
    P, Q = two(), three_half()
    return FunctorData(P, Q, {"0": "0", "1": "1"}, {m.id: m.id for m in P.morphisms})


def reflection_three_two() -> FunctorData:
    """r: 0 ↦ 0, ½ ↦ 1, 1 ↦ 1, left adjoint to the inclusion."""
    return monotone_functor(three_half(), two(), {"0": "0", "h": "1", "1": "1"})


def top_closure_functor() -> FunctorData:
    P = two()
    return FunctorData(P, P, {"0": "1", "1": "1"}, {m.id: "1<=1" for m in P.morphisms})


def functor_corpus() -> dict[str, FunctorData]:
    cats = category_corpus()
    P2, P3 = two(), three_half()
    d2 = cats["discrete2"]
    idem, zz = cats["idempotent_monoid"], cats["z2"]
    fs = finset([0, 1, 2])
    return {
        "identity_chain3": identity_functor(cats["chain3"]),
        "identity_finset012": identity_functor(fs),
        "constant_chain2_at_1": constant_functor(P3, P2, "1"),
        "inclusion_2_3h": inclusion_two_three(),
        "reflection_3h_2": reflection_three_two(),
        "top_closure": top_closure_functor(),
        "discrete2_to_terminal": to_terminal(d2),
        "idem_to_terminal": to_terminal(idem),
        "z2_trivial": FunctorData(zz, zz, {"*": "*"}, {"e": "e", "g": "e"}),
        "z2_identity": identity_functor(zz),
        "finset_to_one": constant_functor(fs, fs, "1"),
        "diamond_to_chain2": monotone_functor(diamond(), P2, {"bot": "0", "a": "0", "b": "1", "top": "1"}),
    }


def monotone_functor(P: FinCat, Q: FinCat, omap: dict[str, str]) -> FunctorData:
    """Functor between poset categories induced by a monotone map."""
    return FunctorData(P, Q, dict(omap), {m.id: f"{omap[m.src]}<={omap[m.dst]}" for m in P.morphisms})


def nat_trans_corpus() -> dict[str, NatTransData]:
    P = two()
    T = top_closure_functor()
    return {
        "top_closure_unit": NatTransData(identity_functor(P), T, {"0": "0<=1", "1": "1<=1"}),
    }


# ---------------------------------------------------------------------------
# mutation fixtures: one broken law each, with the expected witness


def _mutate(cat: FinCat, compose=None, identity=None, morphisms=None) -> FinCat:
    return FinCat(
        cat.objects,
        morphisms if morphisms is not None else cat.morphisms,
        identity if identity is not None else cat.identity,
        compose if compose is not None else cat.compose_table,
        name=cat.name + "~",
    )


def category_mutations() -> dict[str, tuple[FinCat, str, tuple[str, ...]]]:
    """name -> (broken category, violated law, witness)."""
    C = chain(3)
    out = {}
    bad = dict(C.compose_table)
    bad["1<=2", "0<=1"] = "1<=2"
    out["closure"] = (_mutate(C, compose=bad), "closure", ("1<=2", "0<=1"))
    bad = dict(C.compose_table)
    del bad["1<=2", "0<=1"]
    out["totality"] = (_mutate(C, compose=bad), "totality", ("1<=2", "0<=1"))
    Z = z2()
    bad = dict(Z.compose_table)
    bad["e", "g"] = "e"
    out["left_identity"] = (_mutate(Z, compose=bad), "left_identity", ("g",))
    bad = dict(Z.compose_table)
    bad["g", "e"] = "e"
    out["right_identity"] = (_mutate(Z, compose=bad), "right_identity", ("g",))
    # a three-element "monoid" whose table is not associative
    els = ["1", "a", "b"]
    m = {}
    for x in els:
        m["1", x] = x
        m[x, "1"] = x
    m["a", "a"], m["a", "b"], m["b", "a"], m["b", "b"] = "b", "a", "a", "a"
    N = monoid_category(els, m, "1", name="nonassoc")
    out["associativity"] = (N, "associativity", ("b", "a", "a"))
    P = two()
    out["identity_type"] = (
        _mutate(P, identity={"0": "0<=1", "1": "1<=1"}),
        "identity_type",
        ("0", "0<=1"),
    )
    return out


def functor_mutations() -> dict[str, tuple[FunctorData, str, tuple[str, ...]]]:
    out = {}
    Z = z2()
    out["identity"] = (FunctorData(Z, Z, {"*": "*"}, {"e": "g", "g": "g"}), "identity", ("*",))
    idem = idempotent_monoid()
    H = FunctorData(Z, idem, {"*": "*"}, {"e": "1", "g": "a"})
    out["composite"] = (H, "composite", ("g", "g"))
    P, Q = two(), three_half()
    src_bad = FunctorData(P, Q, {"0": "h", "1": "1"}, {"0<=0": "h<=h", "1<=1": "1<=1", "0<=1": "0<=1"})
    out["src"] = (src_bad, "src", ("0<=1",))
    return out


def nat_trans_mutations() -> dict[str, tuple[NatTransData, str, tuple[str, ...]]]:
    P, Q = two(), three_half()
    Z = z2()
    bad_type = NatTransData(inclusion_two_three(), constant_functor(P, Q, "h"), {"0": "0<=h", "1": "1<=1"})
    trivial = FunctorData(Z, Z, {"*": "*"}, {"e": "e", "g": "e"})
    bad_square = NatTransData(identity_functor(Z), trivial, {"*": "e"})
    return {
        "component_type": (bad_type, "component_type", ("1", "1<=1")),
        "naturality": (bad_square, "naturality", ("g",)),
    }


# ---------------------------------------------------------------------------
# overcategories


def product_over(E: FinCat, G: FinCat, name: str = "", validate: bool = True) -> Overcategory:
    """(E×G, π₂). ``validate=False`` skips the exhaustive law check, which
    dominates the cost for FinSet with sets of size 4."""
    P, _, p2 = product(E, G)
    name = name or f"{E.name}x{G.name}"
    if not validate:
        return Overcategory(P, G, p2, name=name)
    return make_overcategory(P, G, p2, name=name)


def finset_over(sizes, G: FinCat | None = None, name: str = "", validate: bool = True) -> Overcategory:
    G = G if G is not None else two()
    return product_over(finset(sizes), G, name=name or f"FinSet{list(sizes)}x{G.name}", validate=validate)


def grothendieck(base: FinCat, fibers: dict[str, FinCat], maps: dict[str, dict[str, str]], name: str = "") -> Overcategory:
    """∫Φ for Φ: G -> Pos given on objects by poset categories and on
    morphisms by monotone maps; objects ``(B|x)``, morphisms ``(b|x|y)``
    over b whenever Φ(b)(x) ≤ y."""
    objects = [pair_id(B, x) for B in base.objects for x in fibers[B].objects]
    morphisms, arity_mor = [], {}
    for b in base.morphisms:
        P, Q = fibers[b.src], fibers[b.dst]
        for x in P.objects:
            for y in Q.objects:
                if Q.hom(maps[b.id][x], y):
                    mid = pair_id(b.id, x, y)
                    morphisms.append(Morphism(mid, pair_id(b.src, x), pair_id(b.dst, y)))
                    arity_mor[mid] = b.id
    identity = {pair_id(B, x): pair_id(base.identity[B], x, x) for B in base.objects for x in fibers[B].objects}
    parts = {}
    for b in base.morphisms:
        for x in fibers[b.src].objects:
            for y in fibers[b.dst].objects:
                parts[pair_id(b.id, x, y)] = (b.id, x, y)
    out = {}
    for m in morphisms:
        out.setdefault(m.src, []).append(m)
    compose = {}
    for m in morphisms:
        b1, x, _ = parts[m.id]
        for n in out.get(m.dst, ()):
            b2, _, z = parts[n.id]
            compose[n.id, m.id] = pair_id(base.comp(b2, b1), x, z)
    total = FinCat(objects, morphisms, identity, compose, name=name)
    arity = FunctorData(total, base, {pair_id(B, x): B for B in base.objects for x in fibers[B].objects}, arity_mor)
    return make_overcategory(total, base, arity, name=name)


def grothendieck_join_breaking() -> Overcategory:
    """Over 0 < 1: fiber 2×2 over 0, chain 3 over 1; the reindexing map
    sends both atoms to the middle and the top to the top, so the join of
    the atoms is not preserved (overcomplete, not overcocomplete)."""
    G = two()
    fibers = {"0": square_lattice(), "1": chain(3)}
    maps = {
        "0<=0": {x: x for x in fibers["0"].objects},
        "1<=1": {x: x for x in fibers["1"].objects},
        "0<=1": {"00": "0", "01": "1", "10": "1", "11": "2"},
    }
    return grothendieck(G, fibers, maps, name="groth_join")


def grothendieck_bottom_breaking() -> Overcategory:
    """Reindexing does not keep ⊥, so no fiber over 0 has an overinitial
    object."""
    G = two()
    fibers = {"0": two(), "1": chain(3)}
    maps = {
        "0<=0": {x: x for x in fibers["0"].objects},
        "1<=1": {x: x for x in fibers["1"].objects},
        "0<=1": {"0": "1", "1": "2"},
    }
    return grothendieck(G, fibers, maps, name="groth_bottom")


def complete_overcategories() -> dict[str, Overcategory]:
    """Fixtures that pass in-budget overcompleteness and K-equalizers."""
    return {
        "chain2_x_chain2": product_over(two(), two()),
        "lattice_x_chain2": product_over(square_lattice(), two()),
        "chain3_x_parallel": product_over(chain(3), shape("parallel")),
        "two_over_terminal": over_terminal(two()),
        "groth_join": grothendieck_join_breaking(),
        "groth_bottom": grothendieck_bottom_breaking(),
    }


def overcategory_corpus() -> dict[str, Overcategory]:
    out = dict(complete_overcategories())
    out["finset012_x_chain2"] = finset_over([0, 1, 2])
    out["finset0123_x_chain2"] = finset_over([0, 1, 2, 3])
    out["idempotent_over_terminal"] = over_terminal(idempotent_monoid())
    out["three_half_over_terminal"] = over_terminal(three_half())
    return out


def two_fiber_fixture() -> Overcategory:
    """FinSet{1,2} over 0 < 1 as a product; fibers of sizes 2 each."""
    return finset_over([1, 2])


def uneven_fiber_fixture() -> Overcategory:
    """Two fibers with 2 and 3 objects (FinSet sizes {0,1} and {0,1,2})
    over the discrete base {p, q}; used for kernel-pair counting."""
    base = discrete(["p", "q"], name="pq")
    objs = {"p0": 0, "p1": 1, "q0": 0, "q1": 1, "q2": 2}
    funcs = [
        (s, d, img)
        for s in objs
        for d in objs
        if s[0] == d[0]
        for img in itertools.product(range(objs[d]), repeat=objs[s])
    ]
    C = concrete_category(objs, funcs, name="uneven")
    arity = FunctorData(C, base, {x: x[0] for x in C.objects}, {m.id: f"id_{m.src[0]}" for m in C.morphisms})
    return make_overcategory(C, base, arity, name="uneven")


# ---------------------------------------------------------------------------
# overfunctor library for the finite surrogate of "absolute"


def plus_one(ov_sizes) -> tuple[OverfunctorData, Overcategory]:
    """X ↦ X ⊔ {*} on FinSet(sizes)×2, landing in FinSet(sizes+1)×2."""
    sizes = list(ov_sizes)
    dom = finset_over(sizes)
    bigger = sorted(set(sizes) | {n + 1 for n in sizes})
    # products of valid categories are valid; the kernel tests cover this
    cod = finset_over(bigger, validate=False)
    E = finset(sizes)
    E2 = finset(bigger)
    omap = {x: str(int(x) + 1) for x in E.objects}
    mmap = {}
    for m in E.morphisms:
        img = function_of(m.id) + (int(m.dst),)
        mmap[m.id] = f"{omap[m.src]}->{omap[m.dst]}:" + ",".join(map(str, img))
    F_E = FunctorData(E, E2, omap, mmap)
    return _product_functor(dom, cod, F_E), cod


def _product_functor(dom: Overcategory, cod: Overcategory, F_E: FunctorData) -> OverfunctorData:
    """F_E × 1_G between product overcategories with pair ids."""
    omap, mmap = {}, {}
    for x in dom.total.objects:
        e, g = x[1:-1].split("|", 1)
        omap[x] = pair_id(F_E.ob(e), g)
    for m in dom.total.morphisms:
        f, b = _split_pair(m.id)
        mmap[m.id] = pair_id(F_E.mor(f), b)
    return overfunctor(dom, cod, FunctorData(dom.total, cod.total, omap, mmap))


def _split_pair(pid: str) -> tuple[str, str]:
    inner = pid[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "|" and depth == 0:
            return inner[:i], inner[i + 1:]
    raise ValueError(pid)


def collapse_to_one(sizes) -> OverfunctorData:
    """(X, B) ↦ (1, B) inside FinSet(sizes)×2 (requires 1 ∈ sizes)."""
    dom = finset_over(sizes)
    E = finset(sizes)
    omap = {x: "1" for x in E.objects}
    mmap = {m.id: "1->1:0" for m in E.morphisms}
    return _product_functor(dom, dom, FunctorData(E, E, omap, mmap))


def forget_base(ov: Overcategory) -> OverfunctorData:
    """(E, A) -> (E, !) over the terminal base."""
    tgt = over_terminal(ov.total)
    return OverfunctorData(ov, tgt, identity_functor(ov.total), to_terminal(ov.base, tgt.base))


def overfunctor_library(sizes=(0, 1, 2, 3)) -> dict[str, OverfunctorData]:
    dom = finset_over(sizes)
    return {
        "identity": identity_overfunctor(dom),
        "collapse_to_one": collapse_to_one(sizes),
        "plus_one": plus_one(sizes)[0],
        "forget_base": forget_base(dom),
    }


def idempotent_split_forks(ov: Overcategory, max_size: int = 3) -> list[tuple[str, str, str, str, str]]:
    """Split forks (f=1, g=e, h, s, t=1) from every idempotent e = s∘h in a
    FinSet fiber of a product fixture FinSet(sizes)×G."""
    T = ov.total
    forks = []
    for B in ov.base.objects:
        for x in ov.fiber_objects(B):
            n = int(_split_pair(x)[0])
            if n > max_size:
                continue
            for img in itertools.product(range(n), repeat=n):
                if any(img[v] != v for v in set(img)):
                    continue
                image = sorted(set(img))
                k = len(image)
                c = pair_id(str(k), B)
                if not T.has_object(c):
                    continue
                pos = {v: i for i, v in enumerate(image)}
                idB = ov.base.identity[B]
                e = pair_id(f"{n}->{n}:" + ",".join(map(str, img)), idB)
                h = pair_id(f"{n}->{k}:" + ",".join(str(pos[v]) for v in img), idB)
                s = pair_id(f"{k}->{n}:" + ",".join(map(str, image)), idB)
                one = T.identity[x]
                forks.append((one, e, h, s, one))
    return forks


# ---------------------------------------------------------------------------
# adjunctions and overmonads


def reflection_adjunction() -> Adjunction:
    """r ⊣ i for the inclusion {0<1} ↪ {0<½<1}, over the terminal base."""
    C, D = over_terminal(three_half()), over_terminal(two())
    r = overfunctor(C, D, reflection_three_two())
    i = overfunctor(D, C, inclusion_two_three())
    unit = {"0": "0<=0", "h": "h<=1", "1": "1<=1"}
    counit = {"0": "0<=0", "1": "1<=1"}
    return Adjunction(r, i, unit, counit, name="reflection")


def identity_adjunction(ov: Overcategory | None = None) -> Adjunction:
    ov = ov if ov is not None else over_terminal(two())
    ids = {x: ov.total.identity[x] for x in ov.total.objects}
    return Adjunction(identity_overfunctor(ov), identity_overfunctor(ov), dict(ids), dict(ids), name="identity")


def top_closure_monad() -> Overmonad:
    ov = over_terminal(two())
    return Overmonad(ov, top_closure_functor(), {"0": "0<=1", "1": "1<=1"}, {"0": "1<=1", "1": "1<=1"}, name="top_closure")


def kleisli_adjunction() -> Adjunction:
    """F_K ⊣ G_K for the top-closure monad on {0<1}."""
    C = over_terminal(two())
    K = kleisli_top_closure()
    D = over_terminal(K)
    Fk = FunctorData(
        C.total, K,
        {"0": "K(0)", "1": "K(1)"},
        {m.id: f"K({m.src}<=1>{m.dst})" for m in C.total.morphisms},
    )
    Gk = FunctorData(K, C.total, {x: "1" for x in K.objects}, {m.id: "1<=1" for m in K.morphisms})
    unit = {"0": "0<=1", "1": "1<=1"}
    counit = {"K(0)": "K(1<=1>0)", "K(1)": "K(1<=1>1)"}
    return Adjunction(overfunctor(C, D, Fk), overfunctor(D, C, Gk), unit, counit, name="kleisli")


def adjunction_corpus() -> dict[str, Adjunction]:
    from .monad import eilenberg_moore

    return {
        "identity_two": identity_adjunction(),
        "identity_lattice_x_chain2": identity_adjunction(product_over(square_lattice(), two())),
        "reflection": reflection_adjunction(),
        "kleisli_top_closure": kleisli_adjunction(),
        "em_top_closure": eilenberg_moore(top_closure_monad()).adjunction,
    }


def freyd_corpus() -> dict[str, OverfunctorData]:
    """Overfunctors on which left-overadjoint synthesis is attempted."""
    P2, P3 = over_terminal(two()), over_terminal(three_half())
    d2 = discrete(["x", "y"], name="discrete2")
    D2, T1 = over_terminal(d2), over_terminal(terminal_category())
    L = product_over(square_lattice(), two())
    return {
        "identity_two": identity_overfunctor(P2),
        "identity_lattice_x_chain2": identity_overfunctor(L),
        "inclusion_2_3h": overfunctor(P2, P3, inclusion_two_three()),
        "reflection_3h_2": overfunctor(P3, P2, reflection_three_two()),
        "discrete2_to_terminal": overfunctor(D2, T1, to_terminal(d2, T1.total)),
        "top_closure": overfunctor(P2, P2, top_closure_functor()),
    }
