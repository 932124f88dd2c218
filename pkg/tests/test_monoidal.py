from itertools import product

import pytest
from hypothesis import given, strategies as st

from overcat.effective import ContrivedTensor, get_instance
from overcat.fincat import chain, terminal_category, validate_category, validate_functor
from overcat.fixtures import square_lattice
from overcat.monoidal import (Slice, enumerate_overmonoids, induced_strict_morphism, join_table_instance,
                              liberality_report, overmonoid_category, phi_isomorphism, pointed_monoidal,
                              slice_monoidal, to_overcategory, validate_fibers, validate_monoidal_overcategory)

EFFECTIVE = ["finset-coproduct", "finset-cartesian", "finsetxg-coproduct", "finsetxg-cartesian"]


def labelled_monoid_count(n: int) -> int:
    """Associative operations on {0..n-1} with a two-sided unit, by brute
    force over all multiplication tables."""
    els = range(n)
    count = 0
    for flat in product(els, repeat=n * n):
        mul = lambda a, b: flat[a * n + b]  # noqa: E731
        units = [e for e in els if all(mul(e, a) == a == mul(a, e) for a in els)]
        if not units:
            continue
        if all(mul(mul(a, b), c) == mul(a, mul(b, c)) for a in els for b in els for c in els):
            count += 1
    return count


@pytest.mark.parametrize("name", EFFECTIVE + ["pt-finset-cartesian", "pt-finsetxg-cartesian"])
def test_effective_instances_are_coherent(name):
    rep = validate_monoidal_overcategory(get_instance(name), max_size=3)
    assert rep.ok, rep.violations[:3]


def test_join_table_instance():
    M = join_table_instance(square_lattice(), chain(2))
    assert validate_monoidal_overcategory(M).ok
    assert all(r.ok for r in validate_fibers(M).values())


def test_broken_unitor_is_reported():
    M = join_table_instance(square_lattice(), chain(2))
    X = M.objects()[-1]
    M._u_l[X] = M.identity(M.objects()[0])
    rep = validate_monoidal_overcategory(M)
    assert "u_l.type" in rep.laws()


@given(st.integers(0, 4), st.integers(0, 4))
def test_tensor_sizes(a, b):
    cop, cart = get_instance("finset-coproduct"), get_instance("finset-cartesian")
    X, Y = cop.obj(range(a)), cop.obj(range(b))
    assert cop.size(cop.tensor(X, Y)) == a + b
    assert cart.size(cart.tensor(X, Y)) == a * b


@given(st.data())
def test_tensor_is_functorial(data):
    M = get_instance(data.draw(st.sampled_from(EFFECTIVE[:2])))
    sets = [M.obj(range(k)) for k in range(4)]

    def fn(X, Y):
        return M.fn(X, Y, {x: data.draw(st.sampled_from(Y.elements)) for x in X.elements})

    X, Y, Z = (data.draw(st.sampled_from(sets[1:])) for _ in range(3))
    X2, Y2, Z2 = (data.draw(st.sampled_from(sets[1:])) for _ in range(3))
    f, g, f2, g2 = fn(X, Y), fn(Y, Z), fn(X2, Y2), fn(Y2, Z2)
    lhs = M.tensor_mor(M.compose(g, f), M.compose(g2, f2))
    assert lhs == M.compose(M.tensor_mor(g, g2), M.tensor_mor(f, f2))


def test_overmonoid_counts_match_table_oracle():
    cart = get_instance("finset-cartesian")
    counts = {}
    for mon in enumerate_overmonoids(cart, 3):
        n = cart.size(mon.C)
        counts[n] = counts.get(n, 0) + 1
    assert [counts.get(n, 0) for n in range(4)] == [labelled_monoid_count(n) for n in range(4)] == [0, 1, 4, 33]
    # under coproduct the unit law forces the fold map
    cop = get_instance("finset-coproduct")
    assert sorted(cop.size(m.C) for m in enumerate_overmonoids(cop, 3)) == [0, 1, 2, 3]


@pytest.mark.parametrize("name", EFFECTIVE)
def test_pointed_instance(name):
    _P, rep = pointed_monoidal(get_instance(name), 3 if "xg" not in name else 2)
    assert rep["ok"]
    assert all(rep["unit_initial"].values())


@pytest.mark.parametrize("name", ["finset-coproduct", "finset-cartesian"])
def test_slice_instance(name):
    M = get_instance(name)
    mon = [m for m in enumerate_overmonoids(M, 2) if M.size(m.C) == 2][-1]
    S, rep = slice_monoidal(M, mon)
    assert rep["ok"] and rep["forgetful_strict"]
    assert isinstance(S, Slice)
    assert rep["objects"] == sum(2 ** n for n in range(3))


@pytest.mark.parametrize("name,size", [("finset-coproduct", 3), ("finsetxg-coproduct", 3),
                                       ("finset-cartesian", 2), ("finsetxg-cartesian", 2)])
def test_phi_round_trips(name, size):
    rep = phi_isomorphism(get_instance(name), size)
    assert rep["ok"], {k: v for k, v in rep.items() if k != "object_map"}
    assert rep["objects"] == rep["pointed_objects"]
    assert rep["triangle"] and rep["round_trip"]


def test_induced_strict_morphisms():
    M = get_instance("finset-cartesian")
    mc = overmonoid_category(M, 2)
    for h in mc.morphisms.values():
        hs = induced_strict_morphism(M, h)
        assert hs.report["ok"], hs.report["failing"]


@pytest.mark.parametrize("name", EFFECTIVE)
def test_effective_instances_are_liberal(name):
    rep = liberality_report(get_instance(name), max_size=2)
    assert rep["liberal"] and rep["failing"] is None


def test_contrived_tensor_is_not_liberal():
    rep = liberality_report(ContrivedTensor(terminal_category()), max_size=2)
    assert not rep["liberal"]
    assert rep["failing"]["law"].startswith("tensor_")


def test_to_overcategory_hom_counts():
    M = get_instance("finset-coproduct")
    objs = M.objects(2)
    ov, obj_ids, _mor_ids = to_overcategory(M, objs)
    assert validate_category(ov.total).ok
    assert validate_functor(ov.arity).ok
    for a in objs:
        for b in objs:
            assert len(ov.total.hom(M.label(a), M.label(b))) == M.size(b) ** M.size(a)
    assert len(obj_ids) == 3
