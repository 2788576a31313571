"""Versioned JSON serialization of diagrams.

Document shape:

    {"version": 1,
     "spaces": [{"name", "kind", "dimension", "group"?}, ...],
     "inputs": [space names], "outputs": [space names],
     "slices": [[generator records], ...]}

Generator records carry a "variant" field with the generator class name.
Complex numbers are [re, im] pairs.  Printing is canonical (sorted keys),
so parse-then-print is idempotent.
"""

from __future__ import annotations

import json

from .diagram import (
    Comult,
    Counit,
    CustomBox,
    Diagram,
    FunctionBox,
    GroupMult,
    GroupUnit,
    Identity,
    Mult,
    Point,
    PointEffect,
    RepBox,
    Swap,
    Unit,
)
from .errors import InvalidArgumentError, ParseError
from .spaces import GroupSpec, SpaceLabel

FORMAT_VERSION = 1


def _c(z: complex):
    return [z.real, z.imag]


def _parse_c(v) -> complex:
    return complex(v[0], v[1])


def _collect_spaces(d: Diagram):
    spaces = {}
    groups = {}

    def see_space(s: SpaceLabel):
        prev = spaces.get(s.name)
        if prev is not None and prev != s:
            raise InvalidArgumentError(
                f"two distinct spaces share the name {s.name!r}"
            )
        spaces[s.name] = s

    def see_group(g: GroupSpec):
        prev = groups.get(g.name)
        if prev is not None and prev != g:
            raise InvalidArgumentError(f"two distinct groups share the name {g.name!r}")
        groups[g.name] = g
        see_space(g.space())

    for s in d.input_spaces + d.output_spaces:
        see_space(s)
    for sl in d.slices:
        for g in sl:
            for s in g.dom + g.cod:
                see_space(s)
            if isinstance(g, (GroupMult, GroupUnit, RepBox)):
                see_group(g.group)
    return spaces, groups


def _space_record(s: SpaceLabel, groups) -> dict:
    rec = {"name": s.name, "kind": s.kind, "dimension": s.dimension}
    if s.name in groups:
        g = groups[s.name]
        rec["group"] = {
            "order": g.order,
            "multiplication_table": [list(r) for r in g.multiplication_table],
            "identity_index": g.identity_index,
            "character_table": None
            if g.character_table is None
            else [[_c(x) for x in row] for row in g.character_table],
        }
    return rec


def _generator_record(g) -> dict:
    if isinstance(g, (Identity, Mult, Unit, Comult, Counit)):
        return {"variant": g.variant, "space": g.space.name}
    if isinstance(g, (Point, PointEffect)):
        return {"variant": g.variant, "space": g.space.name, "index": g.index}
    if isinstance(g, FunctionBox):
        return {
            "variant": g.variant,
            "domain": g.domain.name,
            "codomain": g.codomain.name,
            "table": list(g.table),
        }
    if isinstance(g, (GroupMult, GroupUnit)):
        return {"variant": g.variant, "group": g.group.name}
    if isinstance(g, RepBox):
        return {
            "variant": g.variant,
            "group": g.group.name,
            "irrep_index": g.irrep_index,
            "dimension": g.dimension,
        }
    if isinstance(g, CustomBox):
        return {
            "variant": g.variant,
            "name": g.name,
            "dom": [s.name for s in g.dom_spaces],
            "cod": [s.name for s in g.cod_spaces],
            "matrix": [[_c(x) for x in row] for row in g.matrix],
        }
    if isinstance(g, Swap):
        return {"variant": g.variant, "left": g.left.name, "right": g.right.name}
    raise InvalidArgumentError(f"cannot serialize generator {g!r}")


def to_document(d: Diagram) -> dict:
    spaces, groups = _collect_spaces(d)
    return {
        "version": FORMAT_VERSION,
        "spaces": [_space_record(spaces[name], groups) for name in sorted(spaces)],
        "inputs": [s.name for s in d.input_spaces],
        "outputs": [s.name for s in d.output_spaces],
        "slices": [[_generator_record(g) for g in sl] for sl in d.slices],
    }


def _parse_spaces(doc):
    spaces = {}
    groups = {}
    for rec in doc["spaces"]:
        s = SpaceLabel(rec["kind"], rec["name"], rec["dimension"])
        spaces[s.name] = s
        if "group" in rec and rec["group"] is not None:
            grec = rec["group"]
            chars = grec.get("character_table")
            g = GroupSpec(
                s.name,
                grec["order"],
                tuple(tuple(r) for r in grec["multiplication_table"]),
                grec["identity_index"],
                None
                if chars is None
                else tuple(tuple(_parse_c(x) for x in row) for row in chars),
            )
            groups[s.name] = g
    return spaces, groups


def _parse_generator(rec, spaces, groups):
    variant = rec.get("variant")
    try:
        if variant == "Identity":
            return Identity(spaces[rec["space"]])
        if variant == "Mult":
            return Mult(spaces[rec["space"]])
        if variant == "Unit":
            return Unit(spaces[rec["space"]])
        if variant == "Comult":
            return Comult(spaces[rec["space"]])
        if variant == "Counit":
            return Counit(spaces[rec["space"]])
        if variant == "Point":
            return Point(spaces[rec["space"]], rec["index"])
        if variant == "PointEffect":
            return PointEffect(spaces[rec["space"]], rec["index"])
        if variant == "FunctionBox":
            return FunctionBox(
                spaces[rec["domain"]], spaces[rec["codomain"]], tuple(rec["table"])
            )
        if variant == "GroupMult":
            return GroupMult(groups[rec["group"]])
        if variant == "GroupUnit":
            return GroupUnit(groups[rec["group"]])
        if variant == "RepBox":
            return RepBox(groups[rec["group"]], rec["irrep_index"], rec.get("dimension", 1))
        if variant == "CustomBox":
            return CustomBox(
                rec["name"],
                tuple(spaces[s] for s in rec["dom"]),
                tuple(spaces[s] for s in rec["cod"]),
                tuple(tuple(_parse_c(x) for x in row) for row in rec["matrix"]),
            )
        if variant == "Swap":
            return Swap(spaces[rec["left"]], spaces[rec["right"]])
    except KeyError as exc:
        raise ParseError(f"generator record {rec!r} references unknown name {exc}") from exc
    raise ParseError(f"unknown generator variant {variant!r}")


def from_document(doc: dict) -> Diagram:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {doc.get('version')!r}")
    try:
        spaces, groups = _parse_spaces(doc)
        inputs = tuple(spaces[name] for name in doc["inputs"])
        outputs = tuple(spaces[name] for name in doc["outputs"])
        slices = tuple(
            tuple(_parse_generator(rec, spaces, groups) for rec in sl)
            for sl in doc["slices"]
        )
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(f"missing key {exc} in diagram document") from exc
    except (TypeError, IndexError) as exc:
        raise ParseError(f"malformed diagram document: {exc}") from exc
    return Diagram(inputs, outputs, slices)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Diagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def dumps(d: Diagram) -> str:
    return dumps_canonical(to_document(d))
