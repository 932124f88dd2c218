"""Canonical JSON documents: schemas, parsing with JSON-pointer errors,
and serialization to canonical bytes.

Documents reference each other either inline or by a path relative to the
referencing file. Canonical form: sorted keys, two-space indent, UTF-8,
trailing newline, no floats.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from .adjunction import Adjunction
from .errors import SchemaError
from .fincat import FinCat, FunctorData, Morphism, NatTransData
from .monad import Overmonad
from .monoidal import TableMonoidal
from .overcat import OverDiagram, Overcategory, OverfunctorData, SHAPE_NAMES, make_diagram, shape
from .fincat import identity_functor

_REF = {"anyOf": [{"type": "string"}, {"type": "object"}]}
_STRMAP = {"type": "object", "additionalProperties": {"type": "string"}}

SCHEMAS = {
    "category": {
        "type": "object",
        "required": ["objects", "morphisms", "identity", "compose"],
        "properties": {
            "name": {"type": "string"},
            "objects": {"type": "array", "items": {"type": "string"}},
            "morphisms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "src", "dst"],
                    "properties": {"id": {"type": "string"}, "src": {"type": "string"}, "dst": {"type": "string"}},
                    "additionalProperties": False,
                },
            },
            "identity": _STRMAP,
            "compose": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3},
            },
        },
        "additionalProperties": False,
    },
    "functor": {
        "type": "object",
        "required": ["object_map", "morphism_map"],
        "properties": {"dom": _REF, "cod": _REF, "object_map": _STRMAP, "morphism_map": _STRMAP},
        "additionalProperties": False,
    },
    "nat_trans": {
        "type": "object",
        "required": ["dom_functor", "cod_functor", "components"],
        "properties": {"dom_functor": _REF, "cod_functor": _REF, "components": _STRMAP},
        "additionalProperties": False,
    },
    "overcategory": {
        "type": "object",
        "required": ["total", "base", "arity"],
        "properties": {"name": {"type": "string"}, "total": _REF, "base": _REF, "arity": _REF},
        "additionalProperties": False,
    },
    "diagram": {
        "type": "object",
        "required": ["shape", "functor"],
        "properties": {"shape": _REF, "functor": _REF, "B": {"type": "string"}},
        "additionalProperties": False,
    },
    "overfunctor": {
        "type": "object",
        "required": ["dom", "cod", "F"],
        "properties": {"dom": _REF, "cod": _REF, "F": _REF, "F0": _REF},
        "additionalProperties": False,
    },
    "adjunction": {
        "type": "object",
        "required": ["left", "right", "unit", "counit"],
        "properties": {"name": {"type": "string"}, "left": _REF, "right": _REF, "unit": _STRMAP, "counit": _STRMAP},
        "additionalProperties": False,
    },
    "monad": {
        "type": "object",
        "required": ["overcategory", "T", "eta", "mu"],
        "properties": {"name": {"type": "string"}, "overcategory": _REF, "T": _REF, "eta": _STRMAP, "mu": _STRMAP},
        "additionalProperties": False,
    },
    "monoidal": {
        "type": "object",
        "required": ["overcategory", "tensor", "unit", "u_l", "u_r", "ass"],
        "properties": {
            "name": {"type": "string"},
            "overcategory": _REF,
            "tensor": _REF,
            "unit": _REF,
            "u_l": _STRMAP,
            "u_r": _STRMAP,
            "ass": _STRMAP,
        },
        "additionalProperties": False,
    },
}

_KIND_KEYS = [
    ("monoidal", {"tensor", "u_l"}),
    ("monad", {"T", "eta", "mu"}),
    ("adjunction", {"left", "right", "unit", "counit"}),
    ("overfunctor", {"F", "dom", "cod"}),
    ("overcategory", {"total", "base", "arity"}),
    ("diagram", {"shape", "functor"}),
    ("nat_trans", {"components"}),
    ("functor", {"object_map", "morphism_map"}),
    ("category", {"objects", "morphisms"}),
]


# ---------------------------------------------------------------------------
# canonical bytes


def _reject_floats(value, pointer=""):
    if isinstance(value, float):
        raise SchemaError(pointer or "/", "floats are not allowed in canonical documents")
    if isinstance(value, dict):
        for k, v in value.items():
            _reject_floats(v, f"{pointer}/{k}")
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _reject_floats(v, f"{pointer}/{i}")


def canonical_bytes(value) -> bytes:
    _reject_floats(value)
    return (json.dumps(value, sort_keys=True, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def content_hash(value) -> str:
    return hashlib.sha256(canonical_bytes(value)).hexdigest()


def guess_kind(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise SchemaError("/", "a document must be a JSON object")
    for kind, keys in _KIND_KEYS:
        if keys <= set(doc):
            return kind
    raise SchemaError("/", "unrecognised document kind")


def check_schema(doc, kind: str, pointer: str = "") -> None:
    validator = Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if not errors:
        return
    err = errors[0]
    path = pointer + "".join(f"/{p}" for p in err.absolute_path)
    if err.validator == "required":
        missing = [p for p in err.validator_value if p not in err.instance]
        path += f"/{missing[0]}"
    raise SchemaError(path or "/", err.message)


# ---------------------------------------------------------------------------
# loading


class Loader:
    """Resolves references and records the canonical hash of every file read."""

    def __init__(self):
        self.hashes: dict[str, str] = {}
        self._cache: dict[Path, Any] = {}

    def read(self, path: str | Path) -> Any:
        p = Path(path)
        if p not in self._cache:
            try:
                raw = json.loads(p.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise SchemaError("/", f"{p}: invalid JSON ({exc.msg})") from None
            self._cache[p] = raw
            self.hashes[str(path)] = content_hash(raw)
        return self._cache[p]

    def resolve(self, ref, base: Path, pointer: str) -> tuple[Any, Path]:
        if isinstance(ref, str):
            p = base / ref
            return self.read(p), p.parent
        if isinstance(ref, dict):
            return ref, base
        raise SchemaError(pointer, "expected a path or an inline document")

    # -- typed parsers ----------------------------------------------------------
    def category(self, ref, base: Path, pointer: str = "") -> FinCat:
        doc, base = self.resolve(ref, base, pointer)
        return category_from_doc(doc, pointer)

    def functor(self, ref, base: Path, pointer: str = "", dom: FinCat | None = None, cod: FinCat | None = None) -> FunctorData:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "functor", pointer)
        if dom is None:
            if "dom" not in doc:
                raise SchemaError(pointer + "/dom", "functor needs a domain")
            dom = self.category(doc["dom"], base, pointer + "/dom")
        if cod is None:
            if "cod" not in doc:
                raise SchemaError(pointer + "/cod", "functor needs a codomain")
            cod = self.category(doc["cod"], base, pointer + "/cod")
        return FunctorData(dom, cod, dict(doc["object_map"]), dict(doc["morphism_map"]))

    def nat_trans(self, ref, base: Path, pointer: str = "") -> NatTransData:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "nat_trans", pointer)
        F = self.functor(doc["dom_functor"], base, pointer + "/dom_functor")
        G = self.functor(doc["cod_functor"], base, pointer + "/cod_functor")
        return NatTransData(F, G, dict(doc["components"]))

    def overcategory(self, ref, base: Path, pointer: str = "") -> Overcategory:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "overcategory", pointer)
        total = self.category(doc["total"], base, pointer + "/total")
        B = self.category(doc["base"], base, pointer + "/base")
        arity = self.functor(doc["arity"], base, pointer + "/arity", dom=total, cod=B)
        return Overcategory(total, B, arity, name=doc.get("name", total.name))

    def overfunctor(self, ref, base: Path, pointer: str = "") -> OverfunctorData:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "overfunctor", pointer)
        dom = self.overcategory(doc["dom"], base, pointer + "/dom")
        cod = self.overcategory(doc["cod"], base, pointer + "/cod")
        F = self.functor(doc["F"], base, pointer + "/F", dom=dom.total, cod=cod.total)
        if "F0" in doc:
            F0 = self.functor(doc["F0"], base, pointer + "/F0", dom=dom.base, cod=cod.base)
        else:
            F0 = identity_functor(dom.base)
        return OverfunctorData(dom, cod, F, F0)

    def adjunction(self, ref, base: Path, pointer: str = "") -> Adjunction:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "adjunction", pointer)
        L = self.overfunctor(doc["left"], base, pointer + "/left")
        R = self.overfunctor(doc["right"], base, pointer + "/right")
        return Adjunction(L, R, dict(doc["unit"]), dict(doc["counit"]), name=doc.get("name", ""))

    def monad(self, ref, base: Path, pointer: str = "") -> Overmonad:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "monad", pointer)
        ov = self.overcategory(doc["overcategory"], base, pointer + "/overcategory")
        T = self.functor(doc["T"], base, pointer + "/T", dom=ov.total, cod=ov.total)
        return Overmonad(ov, T, dict(doc["eta"]), dict(doc["mu"]), name=doc.get("name", ""))

    def monoidal(self, ref, base: Path, pointer: str = "") -> TableMonoidal:
        from .fincat import pullback_category

        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "monoidal", pointer)
        ov = self.overcategory(doc["overcategory"], base, pointer + "/overcategory")
        kernel = pullback_category(ov.arity, ov.arity)
        tensor = self.functor(doc["tensor"], base, pointer + "/tensor", dom=kernel, cod=ov.total)
        unit = self.functor(doc["unit"], base, pointer + "/unit", dom=ov.base, cod=ov.total)
        return TableMonoidal(ov, tensor, unit, doc["u_l"], doc["u_r"], doc["ass"], name=doc.get("name", ""))

    def diagram(self, ref, base: Path, ov: Overcategory, pointer: str = "") -> OverDiagram:
        doc, base = self.resolve(ref, base, pointer)
        check_schema(doc, "diagram", pointer)
        s = doc["shape"]
        shp = shape(s) if isinstance(s, str) and s in SHAPE_NAMES else self.category(s, base, pointer + "/shape")
        fdoc, _ = self.resolve(doc["functor"], base, pointer + "/functor")
        if not isinstance(fdoc, dict) or "object_map" not in fdoc:
            raise SchemaError(pointer + "/functor/object_map", "diagram functor needs an object map")
        return make_diagram(ov, shp, dict(fdoc["object_map"]), dict(fdoc.get("morphism_map", {})), doc.get("B"))


def category_from_doc(doc, pointer: str = "") -> FinCat:
    check_schema(doc, "category", pointer)
    objects = doc["objects"]
    obj_set = set(objects)
    if len(obj_set) != len(objects):
        raise SchemaError(pointer + "/objects", "duplicate object id")
    mids = set()
    for i, m in enumerate(doc["morphisms"]):
        for key in ("src", "dst"):
            if m[key] not in obj_set:
                raise SchemaError(f"{pointer}/morphisms/{i}/{key}", f"unknown object {m[key]!r}")
        if m["id"] in mids:
            raise SchemaError(f"{pointer}/morphisms/{i}/id", f"duplicate morphism id {m['id']!r}")
        mids.add(m["id"])
    for x in objects:
        if x not in doc["identity"]:
            raise SchemaError(pointer + "/identity", f"no identity entry for object {x!r}")
    for x, f in doc["identity"].items():
        if f not in mids:
            raise SchemaError(f"{pointer}/identity/{x}", f"unknown morphism {f!r}")
    compose = {}
    for i, entry in enumerate(doc["compose"]):
        for j, f in enumerate(entry):
            if f not in mids:
                raise SchemaError(f"{pointer}/compose/{i}/{j}", f"unknown morphism {f!r}")
        compose[entry[0], entry[1]] = entry[2]
    return FinCat(objects, [Morphism(m["id"], m["src"], m["dst"]) for m in doc["morphisms"]],
                  doc["identity"], compose, name=doc.get("name", ""))


def parse_document(path: str | Path, kind: str | None = None, loader: Loader | None = None):
    """Read a document and return the typed value it describes."""
    loader = loader or Loader()
    p = Path(path)
    doc = loader.read(p)
    kind = kind or guess_kind(doc)
    base = p.parent
    if kind == "category":
        return category_from_doc(doc)
    return getattr(loader, kind)(doc, base)


# ---------------------------------------------------------------------------
# serialization


def category_to_doc(cat: FinCat) -> dict:
    order = {m.id: i for i, m in enumerate(cat.morphisms)}
    compose = sorted(([g, f, gf] for (g, f), gf in cat.compose_table.items()), key=lambda e: (order[e[1]], order[e[0]]))
    doc = {
        "objects": list(cat.objects),
        "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in cat.morphisms],
        "identity": dict(cat.identity),
        "compose": compose,
    }
    if cat.name:
        doc["name"] = cat.name
    return doc


def functor_to_doc(F: FunctorData, inline: bool = True) -> dict:
    doc = {"object_map": dict(F.object_map), "morphism_map": dict(F.morphism_map)}
    if inline:
        doc["dom"] = category_to_doc(F.dom)
        doc["cod"] = category_to_doc(F.cod)
    return doc


def overcategory_to_doc(ov: Overcategory) -> dict:
    doc = {"total": category_to_doc(ov.total), "base": category_to_doc(ov.base),
           "arity": functor_to_doc(ov.arity, inline=False)}
    if ov.name:
        doc["name"] = ov.name
    return doc


def overfunctor_to_doc(Fo: OverfunctorData) -> dict:
    return {"dom": overcategory_to_doc(Fo.dom), "cod": overcategory_to_doc(Fo.cod),
            "F": functor_to_doc(Fo.F, inline=False), "F0": functor_to_doc(Fo.F0, inline=False)}


def to_document(value) -> Any:
    if isinstance(value, FinCat):
        return category_to_doc(value)
    if isinstance(value, FunctorData):
        return functor_to_doc(value)
    if isinstance(value, NatTransData):
        return {"dom_functor": functor_to_doc(value.dom_functor), "cod_functor": functor_to_doc(value.cod_functor),
                "components": dict(value.components)}
    if isinstance(value, Overcategory):
        return overcategory_to_doc(value)
    if isinstance(value, OverfunctorData):
        return overfunctor_to_doc(value)
    if isinstance(value, Adjunction):
        doc = {"left": overfunctor_to_doc(value.left), "right": overfunctor_to_doc(value.right),
               "unit": dict(value.unit), "counit": dict(value.counit)}
        if value.name:
            doc["name"] = value.name
        return doc
    if isinstance(value, Overmonad):
        doc = {"overcategory": overcategory_to_doc(value.ov), "T": functor_to_doc(value.T, inline=False),
               "eta": dict(value.eta), "mu": dict(value.mu)}
        if value.name:
            doc["name"] = value.name
        return doc
    if isinstance(value, TableMonoidal):
        from .fincat import pair_id

        ov = value.ov
        ass = {}
        for x in ov.total.objects:
            for y in ov.total.objects:
                for z in ov.total.objects:
                    key = pair_id(x, y, z)
                    if key in value._ass:
                        ass[key] = value._ass[key]
        return {"overcategory": overcategory_to_doc(ov), "tensor": functor_to_doc(value.tensor_functor, inline=False),
                "unit": functor_to_doc(value.unit_functor, inline=False), "u_l": dict(value._u_l),
                "u_r": dict(value._u_r), "ass": ass, "name": value.name}
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def serialize(value) -> bytes:
    return canonical_bytes(to_document(value))


def write_document(value, path: str | Path) -> None:
    Path(path).write_bytes(serialize(value))
