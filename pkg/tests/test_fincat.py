import itertools

import pytest
from hypothesis import given, strategies as st

from overcat.errors import MalformedTable
from overcat.fincat import (FinCat, FunctorData, chain, coslice, finset, identity_functor, monoid_category, opposite,
                            poset, product, slice_category, validate_category, validate_functor, validate_nat_trans)
from overcat.fixtures import (category_corpus, category_mutations, functor_corpus, functor_mutations,
                              nat_trans_corpus, nat_trans_mutations)


@st.composite
def relations(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    els = [f"p{i}" for i in range(n)]
    # only i < j pairs so the closure stays antisymmetric
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1]),
                          max_size=6))
    return els, [(els[i], els[j]) for i, j in pairs]


def warshall(els, rel):
    idx = {e: i for i, e in enumerate(els)}
    n = len(els)
    R = [[i == j for j in range(n)] for i in range(n)]
    for a, b in rel:
        R[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                R[i][j] = R[i][j] or (R[i][k] and R[k][j])
    return sum(map(sum, R))


@given(relations())
def test_random_posets_validate(data):
    els, rel = data
    P = poset(els, rel)
    assert validate_category(P).ok
    assert len(P.morphisms) == warshall(els, rel)


@given(relations(4))
def test_opposite_is_involutive_and_valid(data):
    P = poset(*data)
    Pop = opposite(P)
    assert validate_category(Pop).ok
    assert opposite(Pop) == P


@given(st.integers(2, 5))
def test_cyclic_monoid_validates(n):
    els = [f"g{i}" for i in range(n)]
    Z = monoid_category(els, {(a, b): f"g{(i + j) % n}" for (i, a), (j, b) in itertools.product(enumerate(els), repeat=2)},
                        "g0")
    assert validate_category(Z).ok
    assert all(Z.is_iso(g) for g in els)


@given(st.integers(3, 4), st.data())
def test_non_associative_table_is_rejected(n, data):
    # x*y = x - y mod n is not associative
    els = [f"g{i}" for i in range(n)]
    mult = {(a, b): f"g{(i - j) % n}" for (i, a), (j, b) in itertools.product(enumerate(els), repeat=2)}
    C = monoid_category(els, mult, "g0")
    rep = validate_category(C)
    assert not rep.ok


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3, unique=True))
def test_finset_hom_counts(sizes):
    F = finset(sizes)
    assert validate_category(F).ok
    for m in sizes:
        for n in sizes:
            assert len(F.hom(str(m), str(n))) == n ** m


@given(relations(3), relations(3))
def test_product_hom_counts(a, b):
    C, D = poset(*a), poset(*b)
    P, p1, p2 = product(C, D)
    assert validate_category(P).ok
    assert validate_functor(p1).ok and validate_functor(p2).ok
    assert len(P.morphisms) == len(C.morphisms) * len(D.morphisms)


def test_corpus_sizes_and_laws():
    cats, funcs = category_corpus(), functor_corpus()
    assert len(cats) >= 12 and len(funcs) >= 10
    for name, C in cats.items():
        assert validate_category(C).ok, name
    for name, F in funcs.items():
        assert validate_functor(F).ok, name
    for name, t in nat_trans_corpus().items():
        assert validate_nat_trans(t).ok, name


@pytest.mark.parametrize("name", sorted(category_mutations()))
def test_category_mutation_witness(name):
    cat, law, witness = category_mutations()[name]
    v = validate_category(cat).first(law)
    assert v is not None and v.witness == witness


@pytest.mark.parametrize("name", sorted(functor_mutations()))
def test_functor_mutation_witness(name):
    F, law, witness = functor_mutations()[name]
    assert validate_functor(F).first(law).witness == witness


@pytest.mark.parametrize("name", sorted(nat_trans_mutations()))
def test_nat_trans_mutation_witness(name):
    t, law, witness = nat_trans_mutations()[name]
    assert validate_nat_trans(t).first(law).witness == witness


def test_dangling_reference_is_malformed():
    C = FinCat(["a"], [("f", "a", "b")], {"a": "f"}, {})
    with pytest.raises(MalformedTable):
        validate_category(C)


def test_slices_of_a_chain():
    C = chain(3)
    S, _ = slice_category(C, "2")
    K, _ = coslice(C, "1")
    assert validate_category(S).ok and validate_category(K).ok
    # objects of C/x are the arrows into x, of x/C the arrows out of x
    assert len(S.objects) == 3
    assert len(K.objects) == 2


def test_identity_functor_laws():
    F = identity_functor(chain(3))
    assert validate_functor(F).ok
    bad = FunctorData(F.dom, F.cod, dict(F.object_map), {**F.morphism_map, "0<=1": "0<=2"})
    assert "dst" in validate_functor(bad).laws()
