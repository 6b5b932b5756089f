"""JSON input/output for fields and covering systems.

Input document::

    {"field": {"type": "quadratic", "d": -1},
     "classes": [{"rep": [0, 1], "modulus_gens": [[2, 0]]}, ...]}

``field`` may also be ``{"type": "rationals"}`` or
``{"type": "table", "labels": [...], "table": [[[...]]]}``.
"""
from __future__ import annotations

from typing import Any, Dict

from .covering import CongruenceClass, CoveringSystem
from .ideal import ideal_from_generators
from .number_field import (
    NumberField, make_field_from_table, make_quadratic_field, make_rationals,
)


class InputError(ValueError):
    """Malformed field or system description."""


def field_from_json(spec: Dict[str, Any]) -> NumberField:
    try:
        kind = spec["type"]
        if kind == "rationals":
            return make_rationals()
        if kind == "quadratic":
            return make_quadratic_field(int(spec["d"]))
        if kind == "table":
            return make_field_from_table(spec["labels"], spec["table"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad field description: {exc}") from exc
    raise InputError(f"unknown field type {kind!r}")


def field_to_json(F: NumberField) -> Dict[str, Any]:
    if F == make_rationals():
        return {"type": "rationals"}
    if F.degree == 2 and F.mult_table[0] == ((1, 0), (0, 1)):
        b, a = F.mult_table[1][1]
        d = 4 * b + 1 if a == 1 else b
        try:
            if make_quadratic_field(d) == F:
                return {"type": "quadratic", "d": d}
        except ValueError:
            pass
    return {"type": "table", "labels": list(F.basis_labels),
            "table": [[list(v) for v in row] for row in F.mult_table]}


def system_from_json(doc: Dict[str, Any]) -> CoveringSystem:
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    F = field_from_json(doc.get("field", {}))
    try:
        classes = []
        for entry in doc["classes"]:
            rep = tuple(int(c) for c in entry["rep"])
            gens = [tuple(int(c) for c in g) for g in entry["modulus_gens"]]
            if len(rep) != F.degree or any(len(g) != F.degree for g in gens):
                raise InputError("coordinate vector length does not match the field degree")
            classes.append(CongruenceClass(rep, ideal_from_generators(F, gens)))
        return CoveringSystem(tuple(classes))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad system description: {exc}") from exc


def system_to_json(sys: CoveringSystem) -> Dict[str, Any]:
    return {
        "field": field_to_json(sys.field),
        "classes": [{"rep": list(c.rep), "modulus_gens": [list(r) for r in c.modulus.hnf]}
                    for c in sys.classes],
    }
