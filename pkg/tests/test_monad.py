import pytest
from hypothesis import given, strategies as st

from overcat.adjunction import validate_adjunction
from overcat.fixtures import adjunction_corpus, complete_overcategories, top_closure_monad
from overcat.monad import (beck_verdict, comparison_overfunctor, eilenberg_moore, em_property_suite,
                           identity_overmonad, overmonad_from_overadjunction, validate_overmonad)
from overcat.fincat import validate_category, validate_functor


def count_algebras(M):
    """Direct enumeration of (x, h) with h∘η = 1 and h∘T(h) = h∘μ, h vertical."""
    ov, T = M.ov, M.T
    E = ov.total
    n = 0
    for x in E.objects:
        for h in E.hom(T.ob(x), x):
            if not ov.vertical(h):
                continue
            if E.comp(h, M.eta[x]) != E.identity[x]:
                continue
            if E.comp(h, T.mor(h)) != E.comp(h, M.mu[x]):
                continue
            n += 1
    return n


def test_top_closure_monad_laws():
    M = top_closure_monad()
    assert validate_overmonad(M).ok
    em = eilenberg_moore(M)
    assert len(em.algebras) == count_algebras(M) == 1
    assert validate_category(em.ov.total).ok
    assert validate_adjunction(em.adjunction).ok


def test_broken_unit_is_rejected():
    M = top_closure_monad()
    M.eta = {"0": "0<=0", "1": "1<=1"}
    assert not validate_overmonad(M).ok


@pytest.mark.parametrize("name", sorted(complete_overcategories()))
def test_identity_monad_algebras(name):
    ov = complete_overcategories()[name]
    M = identity_overmonad(ov)
    assert validate_overmonad(M).ok
    assert len(eilenberg_moore(M).algebras) == count_algebras(M) == len(ov.total.objects)


@pytest.mark.parametrize("name", sorted(adjunction_corpus()))
def test_beck_conditions_agree(name):
    adj = adjunction_corpus()[name]
    v = beck_verdict(adj)
    assert v.agree
    assert v.condition1 == v.condition3 == v.strictly_monadic


@pytest.mark.parametrize("name", ["identity_two", "identity_lattice_x_chain2", "reflection", "em_top_closure"])
def test_strictly_monadic_fixtures(name):
    assert beck_verdict(adjunction_corpus()[name]).strictly_monadic


def test_kleisli_is_not_strictly_monadic():
    v = beck_verdict(adjunction_corpus()["kleisli_top_closure"])
    assert not v.strictly_monadic
    w = v.witness["condition1"]
    assert w["kind"] == "objects"
    assert (w["domain_objects"], w["codomain_objects"]) == (2, 1)


@pytest.mark.parametrize("name", sorted(adjunction_corpus()))
def test_comparison_commutes_with_right_adjoints(name):
    adj = adjunction_corpus()[name]
    K, em, _ = comparison_overfunctor(adj)
    assert validate_functor(K.F).ok
    # U^T ∘ K = G on objects
    for d in adj.D.total.objects:
        assert em.forgetful.F.ob(K.F.ob(d)) == adj.right.F.ob(d)
    M = overmonad_from_overadjunction(adj)
    assert validate_overmonad(M).ok


@given(st.sampled_from(sorted(complete_overcategories())))
def test_identity_monad_inheritance(name):
    s = em_property_suite(identity_overmonad(complete_overcategories()[name]))
    assert s["algebras_are_overcoequalizers"]
    assert s["overcompleteness_inherited"] and s["ET_overcomplete"]
    assert s["k_equalizers_inherited"] and s["ET_k_equalizers"]
    assert s["coequalizer_equivalence"]


def test_top_closure_inheritance():
    s = em_property_suite(top_closure_monad())
    assert s["algebras"] == 1
    assert s["algebras_are_overcoequalizers"] and s["ET_overcomplete"] and s["ET_k_equalizers"]
    assert s["coequalizer_equivalence"]
