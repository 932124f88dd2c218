import pytest
from hypothesis import given, strategies as st

from overcat.errors import InvalidArity, ShapeTooLarge, UnknownTarget
from overcat.fincat import FunctorData, chain, poset, validate_category, validate_functor
from overcat.fixtures import complete_overcategories, finset_over, product_over, two_fiber_fixture
from overcat.overcat import (SHAPE_NAMES, cotensor, diagonal_overfunctor, enumerate_diagrams, fiber,
                             make_overcategory, shape, validate_overfunctor)


@st.composite
def small_posets(draw):
    n = draw(st.integers(1, 3))
    els = [f"q{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1]),
                          max_size=3))
    return poset(els, [(els[i], els[j]) for i, j in pairs])


@given(small_posets(), small_posets())
def test_fibers_partition_the_total_category(L, G):
    ov = product_over(L, G)
    seen = []
    for B in ov.base.objects:
        F, incl = fiber(ov, B)
        assert validate_category(F).ok
        assert validate_functor(incl).ok
        seen.extend(F.objects)
    assert sorted(seen) == sorted(ov.total.objects)


@given(small_posets(), small_posets())
def test_morphism_fibers_are_categories(L, G):
    ov = product_over(L, G)
    for b in ov.base.morphisms:
        F, proj = fiber(ov, b.id)
        assert validate_category(F).ok
        assert validate_functor(proj).ok
        assert len(F.objects) == sum(1 for m in ov.total.morphisms if ov.A(m.id) == b.id)


@pytest.mark.parametrize("name", ["empty", "terminal", "discrete2", "parallel", "span", "cospan", "chain3"])
def test_cotensor_is_an_overcategory(name):
    ov = complete_overcategories()["chain2_x_chain2"]
    cot = cotensor(ov, shape(name))
    assert validate_category(cot.total).ok
    assert validate_functor(cot.arity).ok
    assert validate_overfunctor(diagonal_overfunctor(ov, shape(name), cot)).ok


def test_cotensor_over_finset_fibers():
    ov = two_fiber_fixture()
    cot = cotensor(ov, shape("parallel"))
    assert validate_functor(cot.arity).ok
    assert len(cot.total.objects) == len(enumerate_diagrams(ov, shape("parallel")))


def test_diagram_counts_against_direct_formula():
    ov = finset_over([0, 1, 2])
    for B in ov.base.objects:
        objs = ov.fiber_objects(B)
        n = len(objs)
        assert len(enumerate_diagrams(ov, shape("discrete2"), B)) == n * n
        assert len(enumerate_diagrams(ov, shape("terminal"), B)) == n
        vert = {(x, y): len(ov.hom_over(x, y, ov.base.id(B))) for x in objs for y in objs}
        assert len(enumerate_diagrams(ov, shape("parallel"), B)) == sum(k * k for k in vert.values())


def test_shape_catalogue():
    for name in SHAPE_NAMES:
        assert validate_category(shape(name)).ok


def test_budget_guard():
    ov = finset_over([0, 1, 2])
    with pytest.raises(ShapeTooLarge) as exc:
        enumerate_diagrams(ov, shape("parallel"), budget=5)
    assert exc.value.budget == 5


def test_bad_arity_is_rejected():
    C, B = chain(2), chain(2)
    swap = FunctorData(C, B, {"0": "1", "1": "0"}, {"0<=0": "1<=1", "1<=1": "0<=0", "0<=1": "0<=1"})
    with pytest.raises(InvalidArity):
        make_overcategory(C, B, swap)


def test_unknown_fiber_target():
    ov = next(iter(complete_overcategories().values()))
    with pytest.raises(UnknownTarget):
        fiber(ov, "nowhere")
