"""Write the bundled JSON fixture corpus under fixtures/.

Usage: python3 scripts/make_fixtures.py [OUTDIR]
"""
from __future__ import annotations

import sys
from pathlib import Path

from overcat import fixtures as fx
from overcat.effective import INSTANCES
from overcat.fincat import chain
from overcat.io import canonical_bytes, write_document
from overcat.monoidal import join_table_instance


def _write(value, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    write_document(value, path)


def _diagrams(ov, name: str, out: Path) -> None:
    """An empty, a discrete-2 and a parallel-pair diagram in the first fiber
    that contains a genuine parallel pair."""
    for B in ov.base.objects:
        objs = ov.fiber_objects(B)
        pair = None
        for x in objs:
            for y in objs:
                vert = [f for f in ov.hom_over(x, y, ov.base.id(B))]
                if len(vert) >= 2 and pair is None:
                    pair = (x, y, vert[0], vert[1])
        if pair is None or len(objs) < 2:
            continue
        x, y, f, g = pair
        docs = {
            "empty": {"shape": "empty", "functor": {"object_map": {}}, "B": B},
            "discrete2": {"shape": "discrete2", "functor": {"object_map": {"0": objs[0], "1": objs[1]}}, "B": B},
            "parallel": {"shape": "parallel",
                         "functor": {"object_map": {"s": x, "t": y}, "morphism_map": {"u": f, "v": g}}, "B": B},
        }
        for kind, doc in docs.items():
            p = out / "diagrams" / f"{name}.{kind}.json"
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_bytes(canonical_bytes(doc))
        return


def main(outdir: str = "fixtures") -> None:
    out = Path(outdir)
    for name, cat in fx.category_corpus().items():
        _write(cat, out / "categories" / f"{name}.json")
    for name, F in fx.functor_corpus().items():
        _write(F, out / "functors" / f"{name}.json")
    for name, ov in fx.overcategory_corpus().items():
        _write(ov, out / "overcategories" / f"{name}.json")
    _diagrams(fx.overcategory_corpus()["finset012_x_chain2"], "finset012_x_chain2", out)
    for name, Fo in fx.freyd_corpus().items():
        _write(Fo, out / "overfunctors" / f"{name}.json")
    for name, adj in fx.adjunction_corpus().items():
        _write(adj, out / "adjunctions" / f"{name}.json")
    _write(fx.top_closure_monad(), out / "monads" / "top_closure.json")
    from overcat.monad import identity_overmonad
    from overcat.overcat import over_terminal

    _write(identity_overmonad(over_terminal(fx.two())), out / "monads" / "identity_two.json")
    _write(join_table_instance(fx.square_lattice(), chain(2)), out / "monoidal" / "join_lattice_x_chain2.json")
    (out / "monoidal").mkdir(parents=True, exist_ok=True)
    (out / "monoidal" / "effective_instances.json").write_bytes(canonical_bytes({"instances": sorted(INSTANCES)}))


if __name__ == "__main__":
    main(*sys.argv[1:])
