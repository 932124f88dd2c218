"""Timed acceptance criteria; each test logs one PASS/FAIL line that the
terminal summary prints under "acceptance criteria"."""
import time
from pathlib import Path

import pytest

from overcat.adjunction import validate_adjunction
from overcat.cli import run
from overcat.comma import check_overinitial_lemma, freyd_hypotheses_report, synthesize_left_overadjoint
from overcat.effective import get_instance, letters_object
from overcat.fincat import chain, validate_category, validate_functor
from overcat.fixtures import (adjunction_corpus, category_corpus, category_mutations, complete_overcategories,
                              freyd_corpus, functor_corpus, functor_mutations, idempotent_split_forks,
                              overfunctor_library, square_lattice, top_closure_monad)
from overcat.freemonoid import (build_graded_chain, build_k_maps, free_monoid, verify_chain_identities,
                                verify_unit_equation, word_oracle)
from overcat.io import canonical_bytes
from overcat.monad import beck_verdict, em_property_suite, identity_overmonad
from overcat.monoidal import (Slice, enumerate_overmonoids, join_table_instance, overmonoid_category,
                              phi_isomorphism, pointed_monoidal, slice_monoidal, validate_monoidal_overcategory)
from overcat.overcat import enumerate_diagrams, shape
from overcat.overlimits import (check_split_overfork, limit_via_products_and_equalizers, overcolimit,
                                overcompleteness_report, overlimit, verify_overlimit)
from overcat.errors import UnitNotInitial

pytestmark = pytest.mark.acceptance
FX = Path(__file__).resolve().parents[1] / "fixtures"


def timed(log, number, title, limit, body):
    """Run body() -> dict of named booleans; log and assert."""
    t0 = time.perf_counter()
    checks = body()
    elapsed = time.perf_counter() - t0
    failed = sorted(k for k, v in checks.items() if not v)
    ok = not failed and elapsed <= limit
    note = "" if not failed else f" failing: {', '.join(failed)}"
    log.append(f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title}: {elapsed:.2f}s / {limit}s{note}")
    assert not failed, failed
    assert elapsed <= limit, f"{elapsed:.2f}s exceeds {limit}s"


def test_criterion_01_kernel_corpus(acceptance_log):
    def body():
        cats, funs = category_corpus(), functor_corpus()
        out = {
            "12 categories": len(cats) >= 12,
            "10 functors": len(funs) >= 10,
            "categories valid": all(validate_category(c).ok for c in cats.values()),
            "functors valid": all(validate_functor(F).ok for F in funs.values()),
        }
        cm = [(validate_category(c).first(law), w) for c, law, w in category_mutations().values()]
        fm = [(validate_functor(F).first(law), w) for F, law, w in functor_mutations().values()]
        out["mutation witnesses"] = all(v is not None and v.witness == w for v, w in cm + fm)
        return out

    timed(acceptance_log, 1, "kernel corpus and mutations", 5, body)


def test_criterion_02_overlimits(acceptance_log):
    def body():
        out = {"reverify": True, "rebuilt": True, "equivalence": True, "dual": True}
        for ov in complete_overcategories().values():
            for shp in ("empty", "discrete2", "discrete3", "parallel", "span", "cospan"):
                for d in enumerate_diagrams(ov, shape(shp)):
                    res = overlimit(ov, d)
                    if not (res and verify_overlimit(ov, d, res)):
                        out["reverify"] = False
                    co = overcolimit(ov, d)
                    if co and not verify_overlimit(ov, d, co):
                        out["reverify"] = False
                    if shp in ("parallel", "span", "cospan"):
                        rebuilt = limit_via_products_and_equalizers(ov, d)
                        if not rebuilt or not ov.total.isomorphic(res.apex, rebuilt.apex):
                            out["rebuilt"] = False
            rep = overcompleteness_report(ov)
            out["equivalence"] &= rep["limits"]["equivalence"] and rep["limits"]["complete"]
            out["dual"] &= rep["colimits"]["equivalence"]
        return out

    timed(acceptance_log, 2, "overlimits re-verify, products+equalizers <=> complete", 30, body)


def test_criterion_03_split_forks(acceptance_log):
    def body():
        lib = overfunctor_library()
        ov = lib["identity"].dom
        forks = idempotent_split_forks(ov)[:20]
        verdicts = [check_split_overfork(ov, *f, library=lib) for f in forks]
        return {
            "20 forks": len(forks) == 20,
            "certified": all(v.is_split and v.is_overcoequalizer for v in verdicts),
            "preserved": all(v.preserved and all(v.preserved.values()) for v in verdicts),
        }

    timed(acceptance_log, 3, "split forks certified and preserved", 10, body)


def test_criterion_04_freyd(acceptance_log):
    def body():
        corpus = freyd_corpus()
        adj = synthesize_left_overadjoint(corpus["inclusion_2_3h"])
        none = synthesize_left_overadjoint(corpus["discrete2_to_terminal"])
        counts = {} if none else {r["candidate"]: r["counts"] for r in none.witness["hom_counts"]}
        green = True
        for Fo in corpus.values():
            if synthesize_left_overadjoint(Fo) and not freyd_hypotheses_report(Fo)["all_green"]:
                green = False
        return {
            "L(h)=1": bool(adj) and adj.left.F.ob("h") == "1" and validate_adjunction(adj).ok,
            "NotFound": not none and none.reason == "no_overinitial",
            "counting witness": counts == {"(x|id_*)": {"(x|id_*)": 1, "(y|id_*)": 0},
                                           "(y|id_*)": {"(x|id_*)": 0, "(y|id_*)": 1}},
            "hypotheses green": green,
        }

    timed(acceptance_log, 4, "left overadjoint synthesis", 10, body)


def test_criterion_05_overinitial_lemma(acceptance_log):
    def body():
        cases = [(ov, B) for ov in complete_overcategories().values() for B in ov.base.objects]
        reps = [check_overinitial_lemma(ov, B) for ov, B in cases]
        return {"5 fixtures": len(complete_overcategories()) >= 5, "holds": all(r["holds"] for r in reps)}

    timed(acceptance_log, 5, "overinitial lemma", 10, body)


def test_criterion_06_beck(acceptance_log):
    def body():
        corpus = adjunction_corpus()
        verdicts = {n: beck_verdict(a) for n, a in corpus.items()}
        k = verdicts["kleisli_top_closure"]
        w = (k.witness or {}).get("condition1", {})
        return {
            "conditions agree": all(v.agree for v in verdicts.values()),
            "identity and reflection": all(verdicts[n].strictly_monadic
                                           for n in ("identity_two", "identity_lattice_x_chain2", "reflection")),
            "kleisli rejected": not k.strictly_monadic,
            "object-count witness": w.get("kind") == "objects"
                                    and (w.get("domain_objects"), w.get("codomain_objects")) == (2, 1),
        }

    timed(acceptance_log, 6, "Beck monadicity", 10, body)


def test_criterion_07_inheritance(acceptance_log):
    keys = ("algebras_are_overcoequalizers", "ET_overcomplete", "ET_k_equalizers", "coequalizer_equivalence")

    def body():
        out = {}
        s = em_property_suite(top_closure_monad())
        out["top closure"] = all(s[k] for k in keys)
        for name, ov in complete_overcategories().items():
            s = em_property_suite(identity_overmonad(ov))
            out[f"identity on {name}"] = all(s[k] for k in keys) and s["overcompleteness_inherited"]
        return out

    timed(acceptance_log, 7, "E^T inheritance", 20, body)


def test_criterion_08_monoidal(acceptance_log):
    def body():
        out = {}
        for name in ("finset-coproduct", "finset-cartesian", "finsetxg-coproduct", "finsetxg-cartesian"):
            out[f"coherence {name}"] = validate_monoidal_overcategory(get_instance(name), max_size=3).ok
        out["coherence join table"] = validate_monoidal_overcategory(
            join_table_instance(square_lattice(), chain(2))).ok
        for name in ("finset-cartesian", "finsetxg-cartesian"):
            M = get_instance(name)
            mon = [m for m in enumerate_overmonoids(M, 2) if M.size(m.C) == 2][-1]
            out[f"slice {name}"] = slice_monoidal(M, mon)[1]["ok"]
            out[f"pointed {name}"] = pointed_monoidal(M, 3 if "xg" not in name else 2)[1]["ok"]
        for name, size in (("finset-coproduct", 3), ("finsetxg-coproduct", 3), ("finset-cartesian", 2)):
            rep = phi_isomorphism(get_instance(name), size)
            out[f"phi {name}"] = rep["ok"] and rep["round_trip"] and rep["triangle"]
        return out

    timed(acceptance_log, 8, "monoidal coherence, slice, pointed, phi", 60, body)


def test_criterion_09_free_monoid(acceptance_log):
    def body():
        out = {"a": True, "b": True, "c": True, "d": True}
        for name in ("finset-coproduct", "finsetxg-coproduct"):
            M = get_instance(name)
            for n in range(4):
                res = free_monoid(M, letters_object(M, "abc"[:n]), 4)
                # ι₁: X₁ → X₂ is invertible for every |X|; the empty generator already stops at 0
                out["a"] &= (M.is_iso(res.chain.iota[1]) and res.chain.stabilized_at == (1 if n else 0)
                             and M.is_iso(res.unit_map)
                             and M.size(res.Mo) == n)
                out["c"] &= res.laws["ok"]
        P = get_instance("pt-finset-cartesian")
        for k in (1, 2, 3):
            for N in range(1, 5):
                chain_ = build_graded_chain(P, letters_object(P, "abc"[:k]), N)
                build_k_maps(chain_)
                out["b"] &= word_oracle(chain_)["ok"]
            out["c"] &= free_monoid(P, letters_object(P, "abc"[:k]), 4).laws["ok"]
        for name in ("finset-coproduct", "pt-finset-cartesian"):
            M = get_instance(name)
            for h in overmonoid_category(M, 2).morphisms.values():
                for X in Slice(M, h.src).objects(2):
                    for N in (1, 2, 3):
                        try:
                            out["d"] &= verify_chain_identities(M, h, X, N)["ok"]
                        except UnitNotInitial:
                            pass
        for k in range(4):
            for N in (1, 2, 3):
                out["d"] &= verify_unit_equation(P, letters_object(P, "abc"[:k]), N)
        return out

    timed(acceptance_log, 9, "free monoid (a)-(d)", 60, body)


def test_criterion_10_jobs_determinism(acceptance_log):
    ov = str(FX / "overcategories/finset012_x_chain2.json")
    commands = [
        ["completeness", ov, "--shapes", "empty,discrete2,parallel"],
        ["completeness", str(FX / "overcategories/groth_join.json")],
        ["completeness", str(FX / "overcategories/lattice_x_chain2.json")],
        ["validate", ov],
        ["overlimit", ov, str(FX / "diagrams/finset012_x_chain2.parallel.json")],
        ["overcolimit", ov, str(FX / "diagrams/finset012_x_chain2.discrete2.json")],
        ["overinitial", str(FX / "overcategories/lattice_x_chain2.json"), "--at", "0"],
        ["adjoint", "--functor", str(FX / "overfunctors/discrete2_to_terminal.json")],
        ["monad", "beck", str(FX / "adjunctions/kleisli_top_closure.json")],
        ["monoidal", "phi", "--instance", "finset-coproduct"],
        ["freemonoid", "--instance", "pt-finset-cartesian", "--letters", "a,b", "--oracle"],
    ]

    def body():
        out = {}
        for argv in commands:
            certs = {canonical_bytes(run(["--jobs", str(j)] + argv)[0]) for j in (1, 2, 4)}
            out[" ".join(argv[:2])] = len(certs) == 1
        return out

    timed(acceptance_log, 10, "certificates identical across --jobs", 120, body)
