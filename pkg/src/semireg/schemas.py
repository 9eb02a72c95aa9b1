"""JSON schemas for inputs and reports, plus helpers that validate against them."""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .errors import ValidationError

_POINTS = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_ELEM = {"type": "array", "items": {"type": "integer"}}
_CELLS = {"type": "array", "items": {**_POINTS, "minItems": 1}}
_NUMBER_PAIR = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

DIGRAPH = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "arcs": {"type": "array", "items": {**_POINTS, "minItems": 2, "maxItems": 2}},
    },
    "required": ["n", "arcs"],
}

ABELIAN_GROUP = {
    "type": "object",
    "properties": {"factors": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}},
    "required": ["factors"],
}

SYMBOL = {
    "type": "object",
    "properties": {
        "factors": ABELIAN_GROUP["properties"]["factors"],
        "m": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "array", "items": {"oneOf": [_ELEM, {"type": "integer"}]}}},
        },
    },
    "required": ["entries"],
}

PARTITION = {"type": "object", "properties": {"cells": _CELLS}, "required": ["cells"]}

GTRIPLE = {
    "type": "object",
    "properties": {"base": _POINTS, "delta": _CELLS, "k": {"type": "array", "items": _ELEM}},
    "required": ["base", "delta", "k"],
}

_GENERATORS = {"type": "array", "items": _POINTS}

PROBLEM_SPEC = {
    "type": "object",
    "properties": {
        "degree": {"type": "integer", "minimum": 1},
        "group": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"generators": _GENERATORS},
                    "required": ["generators"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"named": {"enum": ["aut-of-digraph"]}},
                    "required": ["named"],
                    "additionalProperties": False,
                },
            ]
        },
        "h": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"generators": _GENERATORS},
                    "required": ["generators"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"factors": ABELIAN_GROUP["properties"]["factors"]},
                    "required": ["factors"],
                    "additionalProperties": False,
                },
            ]
        },
        "digraph": {
            "type": "object",
            "properties": {
                "arcs": DIGRAPH["properties"]["arcs"],
                "edges": DIGRAPH["properties"]["arcs"],
                "orbital_seeds": DIGRAPH["properties"]["arcs"],
                "symbol": SYMBOL,
                "gp": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
            },
            "minProperties": 1,
            "maxProperties": 1,
            "additionalProperties": False,
        },
        "base": _POINTS,
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "cap": {"type": "integer", "minimum": 1},
    },
    "required": ["digraph"],
    "additionalProperties": False,
}

SPECTRUM_REPORT = {
    "type": "object",
    "properties": {
        "symbol": SYMBOL,
        "eigenvalues": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lambda": _NUMBER_PAIR,
                    "K": {"type": "array", "items": _ELEM},
                    "multiplicity": {"type": "integer", "minimum": 1},
                    "dim_W": {"type": "integer", "minimum": 1},
                },
                "required": ["lambda", "K", "multiplicity", "dim_W"],
            },
        },
    },
    "required": ["symbol", "eigenvalues"],
}

BLOCKS_REPORT = {
    "type": "object",
    "properties": {
        "group_order": {"type": "integer", "minimum": 1},
        "systems": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lambda": _NUMBER_PAIR,
                    "K": {"type": "array", "items": _ELEM},
                    "partition": PARTITION,
                    "triple": GTRIPLE,
                    "case": {"enum": ["i", "ii", "none"]},
                },
                "required": ["lambda", "K", "partition", "triple", "case"],
            },
        },
    },
    "required": ["group_order", "systems"],
}

SCHEMAS = {
    "digraph": DIGRAPH,
    "abelian_group": ABELIAN_GROUP,
    "symbol": SYMBOL,
    "partition": PARTITION,
    "gtriple": GTRIPLE,
    "problem_spec": PROBLEM_SPEC,
    "spectrum_report": SPECTRUM_REPORT,
    "blocks_report": BLOCKS_REPORT,
}


def validate(obj: Any, schema: dict, what: str = "input") -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"{what}: {exc.message} (at {where})") from None


def loads(text: str, what: str = "input") -> Any:
    """Parse JSON, reporting syntax errors with line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what}: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None


def complex_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}
