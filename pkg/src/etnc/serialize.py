"""JSON encodings: integers as decimal strings, rationals as {num, den}."""

from __future__ import annotations

import json
from fractions import Fraction

from .group_ring import GroupRingElement
from .rings import Cyc, ModPN, UElem


def rational(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def parse_rational(d) -> Fraction:
    if isinstance(d, dict):
        return Fraction(int(d["num"]), int(d.get("den", 1)))
    return Fraction(d)


def coefficient(c):
    if isinstance(c, bool):
        return c
    if isinstance(c, (int, Fraction)):
        return rational(c)
    if isinstance(c, Cyc):
        if c.is_rational():
            return rational(c.to_rational())
        return {"cyclotomic": str(c.field.n), "coeffs": [rational(a) for a in c.c]}
    if isinstance(c, (ModPN, UElem)):
        return c.R.to_json(c)
    raise TypeError(f"no JSON encoding for {type(c).__name__}")


def element(x: GroupRingElement) -> list:
    """Sorted [group element, coefficient] pairs."""
    return [[[str(a) for a in g], coefficient(c)] for g, c in x.items()]


def jsonable(obj):
    """Recursively turn a report into JSON types with integers as strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, (Fraction, Cyc, ModPN, UElem)):
        return coefficient(obj)
    if isinstance(obj, GroupRingElement):
        return element(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def dumps(obj, indent=2) -> str:
    return json.dumps(jsonable(obj), indent=indent, sort_keys=True, ensure_ascii=False)
