import pytest
from hypothesis import given, strategies as st

from overcat.effective import get_instance, letters_object
from overcat.errors import NotStabilized, UnitNotInitial
from overcat.freemonoid import (_word_count, build_graded_chain, build_k_maps, free_monoid, free_overmonoid_verdict,
                                graded_law_report, verify_chain_coequalizers, verify_chain_identities,
                                verify_universal_property, verify_unit_equation, word_oracle)
from overcat.monoidal import Slice, enumerate_overmonoids, overmonoid_category

COPRODUCT = ["finset-coproduct", "finsetxg-coproduct"]
POINTED = ["pt-finset-cartesian", "pt-finsetxg-cartesian"]


@pytest.mark.parametrize("name", COPRODUCT)
@pytest.mark.parametrize("n", range(4))
def test_coproduct_chain_stabilizes(name, n):
    M = get_instance(name)
    X = letters_object(M, "abc"[:n])
    res = free_monoid(M, X, 4)
    assert M.is_iso(res.chain.iota[1])
    assert res.chain.stabilized_at == (1 if n else 0)
    assert res.laws["ok"]
    # Mo(X) ≅ X through the unit l(X)
    assert M.is_iso(res.unit_map)
    assert M.size(res.Mo) == n


@given(st.integers(1, 3), st.integers(0, 6))
def test_word_count_closed_form(k, n):
    assert _word_count(k, n) == sum(k ** j for j in range(n + 1))


@pytest.mark.parametrize("name", POINTED)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_pointed_cartesian_matches_words(name, k):
    P = get_instance(name)
    X = letters_object(P, "abc"[:k])
    chain = build_graded_chain(P, X, 4)
    build_k_maps(chain)
    assert chain.status == "truncated@4"
    rep = word_oracle(chain)
    assert rep["ok"], rep
    assert rep["sizes"] == [_word_count(k, n) for n in range(5)]


@pytest.mark.parametrize("name", COPRODUCT + POINTED)
def test_graded_and_grid_laws(name):
    M = get_instance(name)
    X = letters_object(M, "ab")
    res = free_monoid(M, X, 4)
    graded = res.laws["graded"]
    assert graded["ok"], graded
    assert graded["k1_is_q"] is None
    assert res.laws["grid"] is None


@pytest.mark.parametrize("k", [1, 2])
def test_chain_coequalizers_are_universal(k):
    P = get_instance("pt-finset-cartesian")
    chain = build_graded_chain(P, letters_object(P, "ab"[:k]), 3)
    rep = verify_chain_coequalizers(chain, max_elements=7)
    assert rep["ok"] and rep["checked"]


def test_universal_property_on_coproduct():
    M = get_instance("finset-coproduct")
    X = letters_object(M, "ab")
    res = free_monoid(M, X)
    for target in enumerate_overmonoids(M, 2):
        for f in M.hom(X, target.C):
            assert verify_universal_property(res, target, f).count == 1


def test_truncated_chain_has_no_universal_extension():
    P = get_instance("pt-finset-cartesian")
    res = free_monoid(P, letters_object(P, "a"), 3)
    assert not res.stabilized
    with pytest.raises(NotStabilized):
        verify_universal_property(res, enumerate_overmonoids(P, 1)[0], res.unit_map)


def test_plain_cartesian_unit_is_not_initial():
    M = get_instance("finset-cartesian")
    build_graded_chain(M, letters_object(M, "a"), 2)
    with pytest.raises(UnitNotInitial):
        build_graded_chain(M, letters_object(M, ""), 2)


@pytest.mark.parametrize("name", ["finset-coproduct", "pt-finset-cartesian"])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_chain_identities(name, N):
    M = get_instance(name)
    mc = overmonoid_category(M, 2)
    checked = 0
    for h in mc.morphisms.values():
        S = Slice(M, h.src)
        for X in S.objects(2):
            try:
                rep = verify_chain_identities(M, h, X, N)
            except UnitNotInitial:
                continue
            assert rep["ok"], rep
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_unit_equation(k, N):
    P = get_instance("pt-finset-cartesian")
    assert verify_unit_equation(P, letters_object(P, "abc"[:k]), N)


@pytest.mark.parametrize("name", COPRODUCT)
def test_free_overmonoid_adjunction_is_monadic(name):
    rep = free_overmonoid_verdict(get_instance(name))
    assert rep["ok"], rep
