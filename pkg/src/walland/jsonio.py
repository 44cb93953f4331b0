"""Canonical JSON helpers.

Rationals are encoded as exact "p/q" strings (plain "n" when integral),
quadratic numbers as {"a", "b", "delta"} objects.  Serialization is
byte-deterministic: sorted keys, two-space indent, trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SchemaError
from .plane import QuadNum


def frac_str(f) -> str:
    return str(Fraction(f))


def parse_frac(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {s!r}") from exc
    raise SchemaError(f"not a rational: {s!r}")


def quad_to_json(x) -> dict:
    if not isinstance(x, QuadNum):
        x = QuadNum(Fraction(x))
    return {"a": frac_str(x.a), "b": frac_str(x.b), "delta": frac_str(x.d)}


def quad_from_json(d: dict) -> QuadNum:
    try:
        return QuadNum(parse_frac(d["a"]), parse_frac(d["b"]), parse_frac(d["delta"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad quadratic-number record: {d!r}") from exc


def point_to_json(xy) -> dict:
    """Coordinate pair with rational or quadratic entries."""
    return {"x": quad_to_json(xy[0]), "y": quad_to_json(xy[1])}


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
