import itertools

import pytest
from hypothesis import given, settings, strategies as st

from overcat.fixtures import (complete_overcategories, finset_over, idempotent_split_forks, overfunctor_library,
                              product_over, square_lattice, two)
from overcat.overcat import enumerate_diagrams, identity_overfunctor, make_diagram, shape
from overcat.overlimits import (check_split_overfork, first_failing, k_coequalizer, k_equalizer, k_equalizer_report,
                                limit_via_products_and_equalizers, overcolimit, overcompleteness_report, overlimit,
                                preservation_report, verify_overlimit)

LATTICE = product_over(square_lattice(), two())
POINTS = ["00", "01", "10", "11"]


def meet(a, b):
    return "".join(min(x, y) for x, y in zip(a, b))


def join(a, b):
    return "".join(max(x, y) for x, y in zip(a, b))


@pytest.mark.parametrize("a,c", list(itertools.product(POINTS, repeat=2)))
@pytest.mark.parametrize("B", ["0", "1"])
def test_overproducts_are_fiberwise_meets_and_joins(a, c, B):
    d = make_diagram(LATTICE, shape("discrete2"), {"0": f"({a}|{B})", "1": f"({c}|{B})"}, B=B)
    lim = overlimit(LATTICE, d)
    assert lim and lim.apex == f"({meet(a, c)}|{B})"
    assert verify_overlimit(LATTICE, d, lim)
    colim = overcolimit(LATTICE, d)
    assert colim and colim.apex == f"({join(a, c)}|{B})"


@pytest.mark.parametrize("name", sorted(complete_overcategories()))
@pytest.mark.parametrize("shp", ["empty", "discrete2", "discrete3", "parallel"])
def test_every_overlimit_reverifies(name, shp):
    ov = complete_overcategories()[name]
    for d in enumerate_diagrams(ov, shape(shp)):
        res = overlimit(ov, d)
        assert res, d.id
        assert verify_overlimit(ov, d, res)


@pytest.mark.parametrize("name", sorted(complete_overcategories()))
def test_products_and_equalizers_rebuild_limits(name):
    ov = complete_overcategories()[name]
    T = ov.total
    for shp in ("parallel", "span", "cospan"):
        for d in enumerate_diagrams(ov, shape(shp)):
            direct = overlimit(ov, d)
            rebuilt = limit_via_products_and_equalizers(ov, d)
            assert bool(direct) == bool(rebuilt)
            if direct:
                assert T.isomorphic(direct.apex, rebuilt.apex)


NOT_COCOMPLETE = {
    # reindexing breaks the join of the two atoms
    "groth_join": ("discrete2", "((0|01),(0|10);|0)"),
    # reindexing moves the bottom, so the fiber over 0 has no overinitial object
    "groth_bottom": ("empty", "(;|0)"),
}


@pytest.mark.parametrize("name", sorted(complete_overcategories()))
def test_complete_fixtures_report_equivalence_both_ways(name):
    rep = overcompleteness_report(complete_overcategories()[name])
    lim = rep["limits"]
    assert lim["complete"] and lim["products"] and lim["equalizers"]
    for side in ("limits", "colimits"):
        assert rep[side]["equivalence"] and rep[side]["constructions_agree"]
    assert first_failing(rep, "colimits") == NOT_COCOMPLETE.get(name)
    assert rep["budget"] > 0


def test_small_finset_lacks_products():
    # 2 x 2 has four elements, and the fibers stop at three
    rep = overcompleteness_report(finset_over([0, 1, 2]), shapes=["empty", "terminal", "discrete2", "parallel"])
    failing = first_failing(rep)
    assert failing is not None and failing[0] == "discrete2"
    assert not rep["limits"]["products"]
    assert rep["limits"]["equivalence"]


def test_jobs_do_not_change_the_report():
    ov = complete_overcategories()["lattice_x_chain2"]
    assert overcompleteness_report(ov, jobs=1) == overcompleteness_report(ov, jobs=2)


@pytest.mark.parametrize("name", sorted(complete_overcategories()))
def test_k_equalizers_on_complete_fixtures(name):
    ov = complete_overcategories()[name]
    assert k_equalizer_report(ov)["ok"]
    assert k_equalizer_report(ov, dual=True)["ok"]


def test_k_equalizer_of_equal_pair_is_identity_like():
    ov = LATTICE
    f = ov.total.identity["(00|0)"]
    res = k_equalizer(ov, f, f)
    assert res and ov.total.is_iso(res.e)
    assert k_coequalizer(ov, f, f)


FINSET = overfunctor_library()["identity"].dom
FORKS = idempotent_split_forks(FINSET)
LIBRARY = overfunctor_library()


def test_fork_supply():
    assert len(FORKS) >= 20


@settings(max_examples=20)
@given(st.sampled_from(FORKS))
def test_split_forks_are_absolute(fork):
    v = check_split_overfork(FINSET, *fork, library=LIBRARY)
    assert v.is_split and v.is_overcoequalizer
    assert all(v.preserved.values())


def test_identity_preserves_everything():
    ov = complete_overcategories()["chain2_x_chain2"]
    rep = preservation_report(identity_overfunctor(ov))
    assert rep["preserves_overlimits"] and rep["preserves_k_equalizers"]
