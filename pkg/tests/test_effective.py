import pytest
from hypothesis import given, strategies as st

from overcat.effective import FSet, get_instance, letters_object
from overcat.errors import ArityViolation, UsageError
from overcat.monoidal import PointedObject


def classes_by_closure(n, pairs):
    """Equivalence classes on range(n) generated by pairs, by fixpoint."""
    rel = {(a, a) for a in range(n)} | set(pairs) | {(b, a) for a, b in pairs}
    while True:
        more = {(a, c) for a, b in rel for b2, c in rel if b == b2} - rel
        if not more:
            return {frozenset(b for (a2, b) in rel if a2 == a) for a in range(n)}
        rel |= more


@given(st.data())
def test_coequalizer_matches_closure(data):
    M = get_instance("finset-cartesian")
    k = data.draw(st.integers(0, 3))
    n = data.draw(st.integers(1, 5))
    Y, Z = M.obj(range(k)), M.obj(range(n))
    f = M.fn(Y, Z, {y: data.draw(st.integers(0, n - 1)) for y in Y.elements})
    g = M.fn(Y, Z, {y: data.draw(st.integers(0, n - 1)) for y in Y.elements})
    Q, q = M.coequalizer(f, g)
    got = {frozenset(z for z in Z.elements if q(z) == c) for c in Q.elements}
    assert got == classes_by_closure(n, list(zip(f.images, g.images)))
    assert M.compose(q, f) == M.compose(q, g)


def test_factor_through_quotient():
    M = get_instance("finset-coproduct")
    Z = M.obj(range(3))
    f = M.fn(M.obj([0]), Z, {0: 0})
    g = M.fn(M.obj([0]), Z, {0: 1})
    _Q, q = M.coequalizer(f, g)
    h = M.fn(Z, M.obj(["x", "y"]), {0: "x", 1: "x", 2: "y"})
    u = M.factor(q, h)
    assert u is not None and M.compose(u, q) == h
    bad = M.fn(Z, M.obj(["x", "y"]), {0: "x", 1: "y", 2: "y"})
    assert M.factor(q, bad) is None


def test_cross_fiber_tensor_is_rejected():
    M = get_instance("finsetxg-coproduct")
    with pytest.raises(ArityViolation):
        M.tensor(M.obj([0], "0"), M.obj([0], "1"))


def test_reindexing_respects_the_base():
    M = get_instance("finsetxg-cartesian")
    X, Y = M.obj([0, 1], "0"), M.obj([0], "1")
    assert [f.over for f in M.hom(X, Y)] == ["0<=1"]
    assert M.hom(Y, X) == []


def test_letters_object():
    P = get_instance("pt-finset-cartesian")
    X = letters_object(P, ["a", "b"])
    assert isinstance(X, PointedObject)
    assert P.elements(X) == ("*", "a", "b")
    with pytest.raises(ValueError):
        letters_object(P, ["*"])


def test_unknown_instance():
    with pytest.raises(UsageError):
        get_instance("nope")


def test_cached_hash_agrees_with_equality():
    a, b = FSet((0, 1), "*"), FSet((0, 1), "*")
    assert a == b and hash(a) == hash(b)
    assert {a: 1}[b] == 1
