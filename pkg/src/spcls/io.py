"""Instance files: one JSON document with a ``kind`` of ``"sps"`` or ``"cls"``.

::

    {"kind": "sps", "states": [...], "properties": [...],
     "order": ["0<a", ...], "xi": {"p": ["b", "d", "I"], ...}}

    {"kind": "cls", "points": [...], "closed": [[], ["r"], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from spcls.bits import members
from spcls.core import (
    ClosureSpace,
    StatePropertySystem,
    validate_closure_space,
    validate_lattice,
    validate_sps,
)
from spcls.errors import ParseError

Instance = Union[StatePropertySystem, ClosureSpace]


def _names(doc: dict, key: str) -> list[str]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"field {key!r} must be a list of strings")
    if len(set(value)) != len(value):
        raise ParseError(f"names in {key!r} are not unique")
    return value


def _declared(items: Any, declared: set[str], what: str) -> list[str]:
    if not isinstance(items, list) or not all(isinstance(v, str) for v in items):
        raise ParseError(f"{what} must be a list of names")
    for item in items:
        if item not in declared:
            raise ParseError(f"undeclared {what.split()[0]} {item!r}")
    return items


def parse_order(entry: Any) -> tuple[str, str]:
    if not isinstance(entry, str) or entry.count("<") != 1:
        raise ParseError(f"order entry {entry!r} is not of the form 'x<y'")
    lo, hi = (part.strip() for part in entry.split("<"))
    return lo, hi


def parse_instance(doc: Any) -> Instance:
    """Build and validate the structure described by a decoded document.

    Raises :class:`ParseError` for malformed documents and the usual
    validation errors for well-formed documents describing invalid structures.
    """
    if not isinstance(doc, dict):
        raise ParseError("instance must be a JSON object")
    kind = doc.get("kind")
    if kind == "sps":
        states = _names(doc, "states")
        props = _names(doc, "properties")
        declared = set(props)
        order_raw = doc.get("order", [])
        if not isinstance(order_raw, list):
            raise ParseError("field 'order' must be a list")
        order = [parse_order(e) for e in order_raw]
        for lo, hi in order:
            _declared([lo, hi], declared, "property in order")
        xi = doc.get("xi")
        if not isinstance(xi, dict):
            raise ParseError("field 'xi' must be an object")
        for s in xi:
            if s not in states:
                raise ParseError(f"xi given for undeclared state {s!r}")
        for s in states:
            if s not in xi:
                raise ParseError(f"xi missing for state {s!r}")
            _declared(xi[s], declared, "property in xi")
        lattice = validate_lattice(order, props)
        return validate_sps(states, lattice, {s: xi[s] for s in states})
    if kind == "cls":
        points = _names(doc, "points")
        closed = doc.get("closed")
        if not isinstance(closed, list):
            raise ParseError("field 'closed' must be a list of lists")
        declared = set(points)
        family = [_declared(c, declared, "point in closed") for c in closed]
        return validate_closure_space(points, family)
    raise ParseError(f"unknown kind {kind!r}; expected 'sps' or 'cls'")


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return parse_instance(doc)


def sps_document(sps: StatePropertySystem) -> dict:
    lat = sps.lattice
    return {
        "kind": "sps",
        "states": list(sps.states),
        "properties": list(lat.names),
        "order": [f"{lo}<{hi}" for lo, hi in lat.order_pairs()],
        "xi": {s: sps.property_names(row) for s, row in zip(sps.states, sps.xi)},
    }


def cls_document(cs: ClosureSpace) -> dict:
    return {
        "kind": "cls",
        "points": list(cs.points),
        "closed": [[cs.points[i] for i in members(c)] for c in cs.closed],
    }


def document(obj: Instance) -> dict:
    if isinstance(obj, StatePropertySystem):
        return sps_document(obj)
    return cls_document(obj)


def dumps(doc: Any) -> str:
    """Canonical text form: two-space indent, insertion order, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
