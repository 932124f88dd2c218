"""Union–find over hashable labels with canonical minimal representatives."""
from __future__ import annotations

from typing import Hashable, Iterable


def elem_key(e) -> tuple:
    """Structural order on element labels: ints < strings < tuples,
    tuples compared componentwise."""
    if isinstance(e, bool):
        return (0, int(e))
    if isinstance(e, int):
        return (0, e)
    if isinstance(e, str):
        return (1, e)
    if isinstance(e, tuple):
        return (2, tuple(elem_key(x) for x in e))
    raise TypeError(f"unsupported element label {e!r}")


def sort_elements(elements: Iterable) -> tuple:
    return tuple(sorted(set(elements), key=elem_key))


class UnionFind:
    """Disjoint sets; the representative of a class is its least element
    under :func:`elem_key`, so quotients are reproducible."""

    def __init__(self, elements: Iterable[Hashable] = ()):
        self.parent = {}
        for e in elements:
            self.add(e)

    def add(self, e) -> None:
        self.parent.setdefault(e, e)

    def find(self, e):
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if elem_key(rb) < elem_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra

    def classes(self) -> dict:
        out = {}
        for e in self.parent:
            out.setdefault(self.find(e), []).append(e)
        return out

    def representatives(self) -> tuple:
        return sort_elements(self.find(e) for e in self.parent)
