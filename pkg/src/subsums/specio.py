"""JSON serialization for sequence specs, plus the named presets.

The wire format is a JSON object {"prefix": [...], "tail": {...},
"negated": false} with rationals written as "p/q" strings or integers,
or {"merge": [spec, spec, ...]} for interleaved specs. A bare string is
looked up as a preset name wherever a spec is expected.
"""
from __future__ import annotations

from fractions import Fraction

from .rational import as_fraction, format_rational, parse_rational
from .sequences import (
    FiniteTail,
    GeometricTail,
    MergedSpec,
    MergeTail,
    MultiGeometricTail,
    PowerSumTail,
    SequenceSpec,
    geometric,
    multi_geometric,
    power_sum,
)

PRESETS = {
    "harmonic": power_sum(1),
    "thirds": geometric(Fraction(1, 3), Fraction(1, 3)),
    "halves": geometric(Fraction(1, 2), Fraction(1, 2)),
    "gn": multi_geometric((Fraction(9, 20), Fraction(6, 11)), Fraction(5, 3)),
    "kenyon": multi_geometric((Fraction(9, 14), Fraction(3, 10)), Fraction(7, 3)),
    "ratios-2-5-3-5": multi_geometric((Fraction(2, 5), Fraction(3, 5)), Fraction(1)),
}


def _rational(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    return as_fraction(value)


def _load_tail(data):
    if data is None:
        return FiniteTail()
    if not isinstance(data, dict):
        raise ValueError("tail must be an object")
    kind = data.get("kind")
    if kind == "geometric":
        return GeometricTail(_rational(data["a"]), _rational(data["rho"]))
    if kind == "pseries":
        exponent = data["p"]
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise ValueError("pseries exponent must be an integer")
        start = data.get("start", 1)
        if not isinstance(start, int) or isinstance(start, bool):
            raise ValueError("pseries start must be an integer")
        return PowerSumTail(exponent, start)
    if kind == "multigeometric":
        ratios = tuple(_rational(r) for r in data["ratios"])
        return MultiGeometricTail(ratios, _rational(data["total"]))
    raise ValueError(f"unknown tail kind {kind!r}")


def load_spec(data):
    """Build a spec from parsed JSON (dict) or a preset name (str)."""
    if isinstance(data, str):
        try:
            return PRESETS[data]
        except KeyError:
            raise ValueError(f"unknown preset {data!r}") from None
    if not isinstance(data, dict):
        raise ValueError("spec must be a JSON object or preset name")
    if "merge" in data:
        extra = set(data) - {"merge"}
        if extra:
            raise ValueError(f"unexpected keys with merge: {sorted(extra)}")
        parts = tuple(load_spec(part) for part in data["merge"])
        flat = []
        for part in parts:
            if isinstance(part, MergedSpec):
                flat.extend(part.parts)
            else:
                flat.append(part)
        return MergedSpec(tuple(flat))
    extra = set(data) - {"prefix", "tail", "negated"}
    if extra:
        raise ValueError(f"unexpected spec keys: {sorted(extra)}")
    prefix = tuple(_rational(value) for value in data.get("prefix", ()))
    tail = _load_tail(data.get("tail"))
    negated = data.get("negated", False)
    if not isinstance(negated, bool):
        raise ValueError("negated must be a boolean")
    return SequenceSpec(prefix, tail, negated)


def _dump_tail(kind):
    if isinstance(kind, FiniteTail):
        return None
    if isinstance(kind, GeometricTail):
        return {
            "kind": "geometric",
            "a": format_rational(kind.first),
            "rho": format_rational(kind.ratio),
        }
    if isinstance(kind, PowerSumTail):
        return {"kind": "pseries", "p": kind.exponent, "start": kind.start}
    if isinstance(kind, MultiGeometricTail):
        return {
            "kind": "multigeometric",
            "ratios": [format_rational(r) for r in kind.ratios],
            "total": format_rational(kind.total),
        }
    if isinstance(kind, MergeTail):
        # A merge tail round-trips as a merged spec of its parts.
        raise ValueError("dump merge tails via a MergedSpec of their parts")
    raise ValueError(f"cannot serialize tail {type(kind).__name__}")


def dump_spec(spec) -> dict:
    """Inverse of load_spec, producing plain JSON-ready data."""
    if isinstance(spec, MergedSpec):
        return {"merge": [dump_spec(part) for part in spec.parts]}
    if isinstance(spec.tail, MergeTail):
        parts = []
        for part in spec.tail.parts:
            inner = dump_spec(part)
            if spec.negated:
                inner["negated"] = not inner.get("negated", False)
            parts.append(inner)
        if spec.prefix:
            head = {
                "prefix": [format_rational(x) for x in spec.prefix],
                "negated": spec.negated,
            }
            return {"merge": [head] + parts}
        return {"merge": parts}
    data = {}
    if spec.prefix:
        data["prefix"] = [format_rational(x) for x in spec.prefix]
    tail = _dump_tail(spec.tail)
    if tail is not None:
        data["tail"] = tail
    if spec.negated:
        data["negated"] = True
    return data
