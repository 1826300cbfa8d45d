"""Strict readers and writers for the JSON file formats.

Every document is checked against a closed JSON Schema (unknown keys are
rejected) before any object is built.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .dsl import Apply, Arg, BuiltinRef, Dsl, FunctionSymbol, Lit, Signature, TypeUniverse
from .errors import ParseError, TypeMismatch
from .values import BaseType, Value

BASE_TAGS = [b.value for b in BaseType]

_NAME = {"type": "string", "minLength": 1}
_NAT = {"type": "integer", "minimum": 0}
_NAME_MAP = {"type": "object", "additionalProperties": _NAME}

TERM_EXPR_SCHEMA = {
    "$id": "term-expr",
    "oneOf": [
        {"type": "object", "properties": {"builtin": _NAME},
         "required": ["builtin"], "additionalProperties": False},
        {"type": "object", "properties": {"arg": _NAT},
         "required": ["arg"], "additionalProperties": False},
        {"type": "object", "additionalProperties": False, "required": ["lit"],
         "properties": {"lit": {
             "type": "object", "additionalProperties": False,
             "required": ["base", "value"],
             "properties": {"base": {"enum": BASE_TAGS}, "value": {}}}}},
        {"type": "object", "additionalProperties": False, "required": ["apply"],
         "properties": {"apply": {
             "type": "object", "additionalProperties": False,
             "required": ["head", "args"],
             "properties": {"head": {"$ref": "#"},
                            "args": {"type": "array", "items": {"$ref": "#"}}}}}},
    ],
}

DSL_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "types", "functions"],
    "properties": {
        "name": {"type": "string"},
        "types": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "required": ["sigil", "base"],
            "properties": {"sigil": _NAME, "base": {"enum": BASE_TAGS}}}},
        "functions": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "required": ["name", "domain", "codomain", "action"],
            "properties": {
                "name": _NAME,
                "domain": {"type": "array", "items": _NAME},
                "codomain": _NAME,
                "action": TERM_EXPR_SCHEMA}}},
    },
}

TERM_SCHEMA = {
    "oneOf": [
        {"type": "object", "properties": {"unit": _NAME},
         "required": ["unit"], "additionalProperties": False},
        {"type": "object", "properties": {"gen": _NAME},
         "required": ["gen"], "additionalProperties": False},
        {"type": "object", "additionalProperties": False, "required": ["graft"],
         "properties": {"graft": {
             "type": "object", "additionalProperties": False,
             "required": ["outer", "i", "inner"],
             "properties": {"outer": {"$ref": "#"}, "i": _NAT, "inner": {"$ref": "#"}}}}},
        {"type": "object", "additionalProperties": False, "required": ["perm"],
         "properties": {"perm": {
             "type": "object", "additionalProperties": False,
             "required": ["base", "images"],
             "properties": {"base": {"$ref": "#"},
                            "images": {"type": "array", "items": _NAT}}}}},
    ],
}

_MAP_SCHEMA = {
    "type": "object", "additionalProperties": False,
    "properties": {"types": _NAME_MAP, "functions": _NAME_MAP},
}

WITNESS_SCHEMA = {
    "type": "object", "additionalProperties": False,
    "required": ["left", "right", "base"],
    "properties": {"left": _NAME, "right": _NAME, "base": {"enum": BASE_TAGS}},
}

GLUE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["left", "right", "apex", "left_map", "right_map"],
    "properties": {
        "left": _NAME, "right": _NAME, "apex": _NAME,
        "left_map": _MAP_SCHEMA, "right_map": _MAP_SCHEMA,
        "witnesses": {"type": "array", "items": WITNESS_SCHEMA},
        "bound": {"type": "integer", "minimum": 1},
    },
}

DIAGRAM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["objects", "edges"],
    "properties": {
        "objects": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "required": ["name", "dsl"],
            "properties": {"name": _NAME, "dsl": _NAME}}},
        "edges": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "required": ["name", "from", "to"],
            "properties": {"name": _NAME, "from": _NAME, "to": _NAME,
                           "type_map": _NAME_MAP, "function_map": _NAME_MAP}}},
        "witnesses": {"type": "array", "items": WITNESS_SCHEMA},
        "bound": {"type": "integer", "minimum": 1},
    },
}


def load_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from None


def check_schema(doc, schema, where="document"):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        loc = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ParseError(f"{where}: at {loc}: {e.message}") from None


# -- values and action expressions -------------------------------------------


def value_from_json(base_tag: str, raw) -> Value:
    try:
        return Value.from_json(BaseType.parse(base_tag), raw)
    except TypeMismatch as e:
        raise ParseError(str(e)) from None


def value_to_json(v: Value):
    return v.to_json()


def expr_from_json(doc):
    if "builtin" in doc:
        return BuiltinRef(doc["builtin"])
    if "arg" in doc:
        return Arg(doc["arg"])
    if "lit" in doc:
        return Lit(value_from_json(doc["lit"]["base"], doc["lit"]["value"]))
    app = doc["apply"]
    return Apply(expr_from_json(app["head"]),
                 tuple(expr_from_json(a) for a in app["args"]))


def expr_to_json(expr):
    if isinstance(expr, BuiltinRef):
        return {"builtin": expr.name}
    if isinstance(expr, Arg):
        return {"arg": expr.index}
    if isinstance(expr, Lit):
        return {"lit": {"base": expr.value.base.value, "value": expr.value.to_json()}}
    return {"apply": {"head": expr_to_json(expr.head),
                      "args": [expr_to_json(a) for a in expr.args]}}


# -- DSL files ---------------------------------------------------------------


def dsl_from_json(doc, where="dsl") -> Dsl:
    check_schema(doc, DSL_SCHEMA, where)
    universe = TypeUniverse.of(
        (t["sigil"], BaseType(t["base"])) for t in doc["types"])
    if len(universe.sigils) != len(universe.denote):
        raise ParseError(f"{where}: duplicate sigil in types")
    symbols = [
        FunctionSymbol(f["name"], Signature(f["domain"], f["codomain"]),
                       expr_from_json(f["action"]))
        for f in doc["functions"]
    ]
    return Dsl(doc["name"], universe, symbols)


def dsl_to_json(d: Dsl) -> dict:
    return {
        "name": d.name,
        "types": [{"sigil": s, "base": d.universe.denote[s].value} for s in d.sigils],
        "functions": [
            {"name": f.name, "domain": list(f.sig.domain), "codomain": f.sig.codomain,
             "action": expr_to_json(f.action)}
            for f in d.symbols
        ],
    }


def load_dsl(path) -> Dsl:
    return dsl_from_json(load_json(path), str(path))


# -- operad term files -------------------------------------------------------


def term_from_json(doc, where="term"):
    from .operad import Graft, Permutation, Permuted, Unit, Gen

    check_schema(doc, TERM_SCHEMA, where)

    def build(node):
        if "unit" in node:
            return Unit(node["unit"])
        if "gen" in node:
            return Gen(node["gen"])
        if "graft" in node:
            g = node["graft"]
            return Graft(build(g["outer"]), g["i"], build(g["inner"]))
        p = node["perm"]
        return Permuted(build(p["base"]), Permutation(tuple(p["images"])))

    return build(doc)


def term_to_json(t):
    from .operad import Graft, Permuted, Unit, Gen

    if isinstance(t, Unit):
        return {"unit": t.color}
    if isinstance(t, Gen):
        return {"gen": t.name}
    if isinstance(t, Graft):
        return {"graft": {"outer": term_to_json(t.outer), "i": t.index,
                          "inner": term_to_json(t.inner)}}
    if isinstance(t, Permuted):
        return {"perm": {"base": term_to_json(t.base), "images": list(t.perm.images)}}
    raise TypeError(f"not an operad term: {t!r}")


def load_term(path):
    return term_from_json(load_json(path), str(path))


def dump(doc) -> str:
    """Canonical JSON text used for every report and output file."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_json(path, doc):
    Path(path).write_text(dump(doc), encoding="utf-8")
