from hypothesis import given, strategies as st

from overcat.unionfind import UnionFind, elem_key, sort_elements

labels = st.one_of(st.integers(0, 6), st.sampled_from("abcd"), st.tuples(st.integers(0, 2), st.sampled_from("xy")))


def naive_classes(elements, pairs):
    """Transitive closure by repeated merging; the reference partition."""
    blocks = [{e} for e in elements]
    for a, b in pairs:
        ba = next(x for x in blocks if a in x)
        bb = next(x for x in blocks if b in x)
        if ba is not bb:
            blocks.remove(bb)
            ba |= bb
    return {frozenset(b) for b in blocks}


@given(st.lists(labels, min_size=1, max_size=8, unique=True), st.data())
def test_partition_matches_naive_closure(elements, data):
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(elements), st.sampled_from(elements)), max_size=8))
    uf = UnionFind(elements)
    for a, b in pairs:
        uf.union(a, b)
    got = {frozenset(c) for c in uf.classes().values()}
    assert got == naive_classes(elements, pairs)


@given(st.lists(labels, min_size=1, max_size=8, unique=True), st.data())
def test_representative_is_least_member(elements, data):
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(elements), st.sampled_from(elements)), max_size=6))
    uf = UnionFind(elements)
    for a, b in pairs:
        uf.union(a, b)
    for rep, members in uf.classes().items():
        assert rep == min(members, key=elem_key)


@given(st.lists(labels, max_size=10))
def test_sort_elements_is_idempotent_and_deduplicates(xs):
    once = sort_elements(xs)
    assert sort_elements(once) == once
    assert set(once) == set(xs)
    assert len(once) == len(set(xs))


def test_mixed_label_order():
    assert sort_elements(["b", 2, (0, "x"), 1, "a"]) == (1, 2, "a", "b", (0, "x"))
