"""Command-line front end: ``overcat <subcommand> ...``.

Every run prints a canonical certificate (and writes it to ``--cert`` when
given). Exit codes: 0 positive verdict, 1 negative verdict with witness,
2 error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__
from .errors import OvercatError, UsageError
from .io import Loader, canonical_bytes, category_to_doc, content_hash, guess_kind, overcategory_to_doc
from .overcat import SHAPE_NAMES, default_budget

POSITIVE, NEGATIVE, ERROR = "positive", "negative", "error"
EXIT = {POSITIVE: 0, NEGATIVE: 1, ERROR: 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def jsonable(value):
    """Plain JSON data from reports: tuples become lists, keys strings."""
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return jsonable(dataclasses.asdict(value))
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


@dataclasses.dataclass
class Outcome:
    verdict: str
    result: object = None
    witness: object = None


# ---------------------------------------------------------------------------
# subcommands over documents


def cmd_validate(args, ld: Loader, budget: int) -> Outcome:
    from .adjunction import validate_adjunction
    from .fincat import ValidationReport, validate_category, validate_functor, validate_nat_trans
    from .monad import validate_overmonad
    from .monoidal import validate_monoidal_overcategory
    from .overcat import validate_overfunctor

    path = Path(args.document)
    doc = ld.read(path)
    kind = args.kind or guess_kind(doc)
    if kind == "diagram":
        raise UsageError("diagrams are validated by overlimit/overcolimit against an overcategory")
    value = getattr(ld, kind)(doc, path.parent)
    if kind == "overcategory":
        rep = ValidationReport()
        rep.extend(validate_category(value.total), "total.")
        rep.extend(validate_category(value.base), "base.")
        rep.extend(validate_functor(value.arity), "arity.")
    elif kind == "monoidal":
        rep = validate_monoidal_overcategory(value, args.max_size)
    else:
        check = {
            "category": validate_category,
            "functor": validate_functor,
            "nat_trans": validate_nat_trans,
            "overfunctor": validate_overfunctor,
            "adjunction": validate_adjunction,
            "monad": validate_overmonad,
        }[kind]
        rep = check(value)
    result = {"kind": kind, "ok": rep.ok, "violations": len(rep.violations)}
    if rep.ok:
        return Outcome(POSITIVE, result)
    return Outcome(NEGATIVE, result, rep.violations[0].to_json())


def cmd_fiber(args, ld, budget):
    from .overcat import fiber

    ov = ld.overcategory(args.overcategory, Path("."))
    cat, incl = fiber(ov, args.at)
    return Outcome(POSITIVE, {"fiber": category_to_doc(cat), "inclusion": dict(incl.object_map)})


def cmd_cotensor(args, ld, budget):
    from .overcat import cotensor, shape

    ov = ld.overcategory(args.overcategory, Path("."))
    cot = cotensor(ov, shape(args.shape), budget)
    return Outcome(POSITIVE, {"shape": args.shape, "objects": len(cot.total.objects),
                              "morphisms": len(cot.total.morphisms), "overcategory": overcategory_to_doc(cot)})


def _limit(args, ld, dual):
    from .overlimits import overcolimit, overlimit, verify_overlimit

    ov = ld.overcategory(args.overcategory, Path("."))
    diag = ld.diagram(args.diagram, Path("."), ov)
    res = overcolimit(ov, diag) if dual else overlimit(ov, diag)
    if not res:
        return Outcome(NEGATIVE, {"status": "not_found", "reason": res.reason}, res.witness)
    out = res.to_json()
    if not dual:
        out["reverified"] = verify_overlimit(ov, diag, res)
    return Outcome(POSITIVE, out)


def cmd_overlimit(args, ld, budget):
    return _limit(args, ld, False)


def cmd_overcolimit(args, ld, budget):
    return _limit(args, ld, True)


def _kequalizer(args, ld, dual):
    from .overlimits import k_coequalizer, k_equalizer

    ov = ld.overcategory(args.overcategory, Path("."))
    res = (k_coequalizer if dual else k_equalizer)(ov, args.f, args.g)
    if not res:
        return Outcome(NEGATIVE, {"status": "not_found", "reason": res.reason}, res.witness)
    return Outcome(POSITIVE, res.to_json())


def cmd_kequalizer(args, ld, budget):
    return _kequalizer(args, ld, False)


def cmd_kcoequalizer(args, ld, budget):
    return _kequalizer(args, ld, True)


def cmd_completeness(args, ld, budget):
    from .overlimits import DEFAULT_SHAPES, first_failing, overcompleteness_report

    ov = ld.overcategory(args.overcategory, Path("."))
    shapes = args.shapes.split(",") if args.shapes else DEFAULT_SHAPES
    for s in shapes:
        if s not in SHAPE_NAMES:
            raise UsageError(f"unknown shape {s!r}")
    rep = overcompleteness_report(ov, budget, shapes, colimits=not args.no_colimits, jobs=args.jobs)
    sections = ["limits"] + ([] if args.no_colimits else ["colimits"])
    ok = all(rep[s]["complete"] and rep[s]["equivalence"] for s in sections)
    if ok:
        return Outcome(POSITIVE, rep)
    witness = {s: first_failing(rep, s) for s in sections}
    return Outcome(NEGATIVE, rep, witness)


def cmd_comma(args, ld, budget):
    from .comma import comma_overcategory

    Fo = ld.overfunctor(args.functor, Path("."))
    comma = comma_overcategory(Fo, args.object)
    return Outcome(POSITIVE, {"object": args.object, "top": comma.top,
                              "parts": {k: list(v) for k, v in sorted(comma.parts.items())},
                              "overcategory": overcategory_to_doc(comma.ov)})


def cmd_overinitial(args, ld, budget):
    from .comma import check_overinitial_lemma, find_overinitial

    ov = ld.overcategory(args.overcategory, Path("."))
    family = args.family.split(",") if args.family else None
    rep = check_overinitial_lemma(ov, args.at, family, budget, require_hypotheses=not args.skip_hypotheses)
    found = find_overinitial(ov, args.at)
    if found and rep["holds"]:
        return Outcome(POSITIVE, {"lemma": rep, "overinitial": found.to_json()})
    witness = found.witness if not found else {"lemma_failed": True}
    return Outcome(NEGATIVE, {"lemma": rep, "overinitial": None}, witness)


def cmd_adjoint(args, ld, budget):
    from .comma import synthesize_left_overadjoint

    Fo = ld.overfunctor(args.functor, Path("."))
    res = synthesize_left_overadjoint(Fo, budget)
    if not res:
        return Outcome(NEGATIVE, {"status": "none", "reason": res.reason, "witness_B": res.witness.get("B")},
                       res.witness)
    L = res.left.F
    checks = {"triangles": res.checks["triangles"], "naturality": res.checks["naturality"],
              "hom_bijection": res.checks["hom_bijection"]}
    out = {"object_map": dict(L.object_map), "morphism_map": dict(L.morphism_map),
           "unit": dict(res.unit), "counit": dict(res.counit), "checks": checks}
    if all(checks.values()):
        return Outcome(POSITIVE, out)
    return Outcome(NEGATIVE, out, res.checks["validation"])


def cmd_monad(args, ld, budget):
    from .monad import beck_verdict, em_property_suite, validate_overmonad

    if args.action == "beck":
        adj = ld.adjunction(args.document, Path("."))
        v = beck_verdict(adj)
        out = v.to_json()
        return Outcome(POSITIVE if v.strictly_monadic and v.agree else NEGATIVE, out, v.witness)
    M = ld.monad(args.document, Path("."))
    rep = validate_overmonad(M)
    if args.action == "validate" or not rep.ok:
        out = rep.to_json()
        return Outcome(POSITIVE if rep.ok else NEGATIVE, out, None if rep.ok else rep.violations[0].to_json())
    suite = em_property_suite(M, budget)
    keys = ("algebras_are_overcoequalizers", "overcompleteness_inherited", "k_equalizers_inherited",
            "coequalizer_equivalence")
    failing = [k for k in keys if not suite[k]]
    return Outcome(NEGATIVE if failing else POSITIVE, suite, {"failing": failing} if failing else None)


# ---------------------------------------------------------------------------
# monoidal and free monoid


def _monoidal_instance(args, ld):
    from .effective import get_instance

    if args.instance and args.bundle:
        raise UsageError("give either --instance or --bundle")
    if args.instance:
        return get_instance(args.instance)
    if args.bundle:
        return ld.monoidal(args.bundle, Path("."))
    raise UsageError("one of --instance or --bundle is required")


def cmd_monoidal(args, ld, budget):
    from .monoidal import (enumerate_overmonoids, liberality_report, phi_isomorphism, pointed_monoidal,
                           slice_monoidal, validate_monoidal_overcategory)

    M = _monoidal_instance(args, ld)
    size = args.max_size
    if args.action == "validate":
        rep = validate_monoidal_overcategory(M, size, min(size, 2))
        return Outcome(POSITIVE if rep.ok else NEGATIVE, rep.to_json(), None if rep.ok else rep.violations[0].to_json())
    if args.action == "slice":
        mons = enumerate_overmonoids(M, min(size, 2), budget)
        if not 0 <= args.monoid < len(mons):
            raise UsageError(f"--monoid must be in 0..{len(mons) - 1}")
        _, rep = slice_monoidal(M, mons[args.monoid], max_size=min(size, 2))
        out = {"monoid": M.label(mons[args.monoid].C), "objects": rep["objects"],
               "forgetful_strict": rep["forgetful_strict"], "validation": rep["validation"].to_json(), "ok": rep["ok"]}
        wit = None if rep["ok"] else {"validation": out["validation"]["violations"][:1],
                                      "forgetful_strict": rep["forgetful_strict"]}
        return Outcome(POSITIVE if rep["ok"] else NEGATIVE, out, wit)
    if args.action == "pointed":
        _, rep = pointed_monoidal(M, size)
        out = {"validation": rep["validation"].to_json(), "unit_initial": rep["unit_initial"], "ok": rep["ok"]}
        wit = None if rep["ok"] else {"validation": out["validation"]["violations"][:1],
                                      "unit_initial": rep["unit_initial"]}
        return Outcome(POSITIVE if rep["ok"] else NEGATIVE, out, wit)
    if args.action == "phi":
        rep = phi_isomorphism(M, size, budget)
        return Outcome(POSITIVE if rep["ok"] else NEGATIVE, rep, None if rep["ok"] else {"missing": rep["missing"]})
    rep = liberality_report(M, max_size=min(size, 2))
    ok = rep["liberal"]
    return Outcome(POSITIVE if ok else NEGATIVE, rep, None if ok else rep["failing"])


def cmd_freemonoid(args, ld, budget):
    from .effective import get_instance, letters_object
    from .freemonoid import free_monoid, word_oracle
    from .monoidal import Pointed

    M = get_instance(args.instance)
    letters = [a for a in args.letters.split(",") if a] if args.letters else []
    X = letters_object(M, letters, args.base)
    res = free_monoid(M, X, args.truncate)
    chain = res.chain
    out = {"instance": args.instance, "letters": letters, "status": chain.status, "sizes": chain.sizes(),
           "laws": res.laws}
    if args.oracle:
        if not isinstance(M, Pointed):
            raise UsageError("--oracle needs a pointed instance")
        out["oracle"] = word_oracle(chain)
    if args.emit:
        emitted = chain.to_json()
        if args.oracle:
            emitted["oracle"] = out["oracle"]
        Path(args.emit).write_bytes(canonical_bytes(jsonable(emitted)))
    ok = res.laws["ok"] and out.get("oracle", {"ok": True})["ok"]
    if ok:
        return Outcome(POSITIVE, out)
    witness = {"graded": res.laws["graded"], "grid": res.laws["grid"]}
    if args.oracle:
        witness["oracle"] = {k: out["oracle"][k] for k in ("bijective", "iota", "q", "k")}
    return Outcome(NEGATIVE, out, witness)


# ---------------------------------------------------------------------------
# witness replay


def cmd_check_witness(args, ld, budget):
    cert_path = Path(args.certificate)
    cert = ld.read(cert_path)
    argv = list(cert.get("command", []))
    if not argv or argv[0] == "check-witness":
        raise UsageError("certificate does not record a replayable command")
    stale = {}
    for p, h in sorted(cert.get("inputs", {}).items()):
        try:
            now = content_hash(Loader().read(p))
        except OSError:
            now = None
        if now != h:
            stale[p] = {"recorded": h, "current": now}
    if stale:
        return Outcome(NEGATIVE, {"replayed": False}, {"stale_inputs": stale})
    env_budget = ["--budget", str(cert["budget"])] if cert.get("budget") is not None else []
    replay, _ = run(env_budget + argv)
    replay["command"] = cert["command"]
    same = canonical_bytes(replay) == canonical_bytes(cert)
    out = {"replayed": True, "identical": same, "verdict": cert.get("verdict")}
    if same:
        return Outcome(POSITIVE, out)
    diff = sorted(k for k in set(cert) | set(replay) if cert.get(k) != replay.get(k))
    return Outcome(NEGATIVE, out, {"differing_fields": diff})


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="overcat", description="Finite overcategory engine with certificates.")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget (default: OVERCAT_BUDGET or 10^6)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for library-level parallelism")
    p.add_argument("--cert", default=None, help="also write the certificate to this path")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("validate", help="check the laws of any document")
    s.add_argument("document")
    s.add_argument("--kind", choices=["category", "functor", "nat_trans", "overcategory", "overfunctor",
                                      "adjunction", "monad", "monoidal"])
    s.add_argument("--max-size", type=int, default=3)
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("fiber", help="fiber of an overcategory over a base object or morphism")
    s.add_argument("overcategory")
    s.add_argument("--at", required=True)
    s.set_defaults(fn=cmd_fiber)

    s = sub.add_parser("cotensor", help="cotensor of an overcategory with a named shape")
    s.add_argument("overcategory")
    s.add_argument("--shape", required=True, choices=SHAPE_NAMES)
    s.set_defaults(fn=cmd_cotensor)

    for name, fn in (("overlimit", cmd_overlimit), ("overcolimit", cmd_overcolimit)):
        s = sub.add_parser(name)
        s.add_argument("overcategory")
        s.add_argument("diagram")
        s.set_defaults(fn=fn)

    for name, fn in (("kequalizer", cmd_kequalizer), ("kcoequalizer", cmd_kcoequalizer)):
        s = sub.add_parser(name)
        s.add_argument("overcategory")
        s.add_argument("--f", required=True)
        s.add_argument("--g", required=True)
        s.set_defaults(fn=fn)

    s = sub.add_parser("completeness", help="budget-relative overcompleteness report")
    s.add_argument("overcategory")
    s.add_argument("--shapes", default=None, help="comma-separated shape names")
    s.add_argument("--no-colimits", action="store_true")
    s.set_defaults(fn=cmd_completeness)

    s = sub.add_parser("comma", help="comma overcategory (B|F)")
    s.add_argument("--functor", required=True)
    s.add_argument("--object", required=True)
    s.set_defaults(fn=cmd_comma)

    s = sub.add_parser("overinitial", help="overinitial search and the weakly-initial-family lemma")
    s.add_argument("overcategory")
    s.add_argument("--at", required=True)
    s.add_argument("--family", default=None)
    s.add_argument("--skip-hypotheses", action="store_true")
    s.set_defaults(fn=cmd_overinitial)

    s = sub.add_parser("adjoint", help="synthesize a left overadjoint")
    s.add_argument("--functor", required=True)
    s.set_defaults(fn=cmd_adjoint)

    s = sub.add_parser("monad")
    s.add_argument("action", choices=["validate", "em", "beck"])
    s.add_argument("document")
    s.set_defaults(fn=cmd_monad)

    s = sub.add_parser("monoidal")
    s.add_argument("action", choices=["validate", "slice", "pointed", "phi", "liberal"])
    s.add_argument("--instance", default=None)
    s.add_argument("--bundle", default=None)
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--monoid", type=int, default=0, help="index of the overmonoid to slice over")
    s.set_defaults(fn=cmd_monoidal)

    s = sub.add_parser("freemonoid", help="free overmonoid by the graded chain")
    s.add_argument("--instance", required=True)
    s.add_argument("--letters", default="")
    s.add_argument("--base", default=None, help="base object of the generator")
    s.add_argument("--truncate", type=int, default=4)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--emit", default=None)
    s.set_defaults(fn=cmd_freemonoid)

    s = sub.add_parser("check-witness", help="replay a certificate and compare")
    s.add_argument("certificate")
    s.set_defaults(fn=cmd_check_witness)
    return p


def _echo(argv: list[str]) -> list[str]:
    """The command line minus flags that must not affect the certificate."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--jobs", "--cert", "--budget"):
            skip = True
            continue
        if a.startswith(("--jobs=", "--cert=", "--budget=")):
            continue
        out.append(a)
    return out


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Global options shared by every subcommand."""
    budget: int
    jobs: int = 1
    cert: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        budget = args.budget if args.budget is not None else default_budget()
        if budget < 1:
            raise UsageError("--budget must be positive")
        return cls(budget, args.jobs, args.cert)


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute a command; returns the certificate and the exit code."""
    ld = Loader()
    budget = None
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("a subcommand is required")
        config = RunConfig.from_args(args)
        budget = config.budget
        outcome = args.fn(args, ld, budget)
    except OvercatError as exc:
        outcome = Outcome(ERROR, {"error": type(exc).__name__, "message": str(exc),
                                  "pointer": getattr(exc, "pointer", None)})
    except (OSError, ValueError, KeyError) as exc:
        outcome = Outcome(ERROR, {"error": type(exc).__name__, "message": str(exc)})
    cert = {
        "command": _echo(argv),
        "engine": {"name": "overcat", "version": __version__},
        "inputs": dict(sorted(ld.hashes.items())),
        "verdict": outcome.verdict,
        "result": jsonable(outcome.result),
        "witness": jsonable(outcome.witness),
        "budget": budget,
    }
    return cert, EXIT[outcome.verdict]


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    cert, code = run(argv)
    data = canonical_bytes(cert)
    cert_path = None
    for i, a in enumerate(argv):
        if a == "--cert" and i + 1 < len(argv):
            cert_path = argv[i + 1]
        elif a.startswith("--cert="):
            cert_path = a.split("=", 1)[1]
    if cert_path:
        try:
            Path(cert_path).write_bytes(data)
        except OSError as exc:
            print(f"overcat: cannot write certificate: {exc}", file=sys.stderr)
            code = EXIT[ERROR]
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
