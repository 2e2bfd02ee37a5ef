"""JSON encoding of cover specs and product surface specs."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import jsonschema

from .covers import INFINITY, BranchPoint, CoverSpec, parse_coordinate, validate_spec
from .errors import InputError
from .groups import FiniteAbelianGroup, GroupAutomorphism
from .torelli import ProductSurfaceSpec

_INT_ARRAY = {"type": "array", "items": {"type": "integer"}}

COVER_SCHEMA = {
    "type": "object",
    "required": ["group", "quotient_genus", "branch"],
    "properties": {
        "group": {
            "type": "object",
            "required": ["factors"],
            "properties": {"factors": {**_INT_ARRAY, "minItems": 1}},
        },
        "quotient_genus": {"type": "integer", "minimum": 0},
        "branch": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["monodromy"],
                "properties": {
                    "label": {"type": "string"},
                    "monodromy": _INT_ARRAY,
                    "coordinate": {"type": ["string", "integer", "null"]},
                },
            },
        },
    },
}

PRODUCT_SCHEMA = {
    "type": "object",
    "required": ["spec1", "spec2"],
    "properties": {
        "spec1": COVER_SCHEMA,
        "spec2": COVER_SCHEMA,
        "twist": {"oneOf": [{"type": "null"}, {"type": "array", "items": _INT_ARRAY}]},
    },
}


def _validate(data, schema):
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {path}: {exc.message}") from None


def cover_from_json(data: dict) -> CoverSpec:
    _validate(data, COVER_SCHEMA)
    G = FiniteAbelianGroup(tuple(data["group"]["factors"]))
    branch = []
    for j, b in enumerate(data["branch"]):
        coord = b.get("coordinate")
        branch.append(BranchPoint(b.get("label", f"P{j + 1}"), G.element(b["monodromy"]), parse_coordinate(coord)))
    return validate_spec(CoverSpec(G, data["quotient_genus"], tuple(branch)))


def cover_to_json(spec: CoverSpec) -> dict:
    def coord(c):
        if c is None:
            return None
        return INFINITY if c == INFINITY else str(c)

    return {
        "group": spec.group.to_json(),
        "quotient_genus": spec.quotient_genus,
        "branch": [
            {"label": b.label, "monodromy": list(b.monodromy), "coordinate": coord(b.coordinate)} for b in spec.branch
        ],
    }


def product_from_json(data: dict) -> ProductSurfaceSpec:
    _validate(data, PRODUCT_SCHEMA)
    twist = data.get("twist")
    return ProductSurfaceSpec(
        cover_from_json(data["spec1"]),
        cover_from_json(data["spec2"]),
        GroupAutomorphism(tuple(tuple(row) for row in twist)) if twist is not None else None,
    )


def product_to_json(ps: ProductSurfaceSpec) -> dict:
    return {
        "spec1": cover_to_json(ps.spec1),
        "spec2": cover_to_json(ps.spec2),
        "twist": ps.twist.to_json() if ps.twist is not None else None,
    }


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8") if str(path) != "-" else sys.stdin.read()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
