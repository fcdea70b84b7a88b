"""Plain-text and JSON rendering of verification reports.

Exact values are always written as ``"p/q"`` strings, never decimals.
JSON output uses the dataclass field names and parses back to an equal
report via :func:`report_from_json`.
"""

from __future__ import annotations

import json
from dataclasses import fields
from fractions import Fraction

from .iid import IidReport
from .measure import format_rational, parse_rational
from .sampler import SimplenessReport
from .stats.gof import GofResult

__all__ = ["render_text", "render_json", "report_from_json"]

_KIND = {SimplenessReport: "simpleness", IidReport: "iid", GofResult: "gof"}
_BY_KIND = {v: k for k, v in _KIND.items()}


def _text_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, tuple):
        return "(" + ",".join(_text_value(a) for a in v) + ")"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_text(report) -> str:
    lines = []
    if isinstance(report, SimplenessReport):
        lines.append(f"simple: {_text_value(report.is_simple)}")
    for f in fields(report):
        if isinstance(report, SimplenessReport) and f.name == "is_simple":
            continue
        lines.append(f"{f.name}: {_text_value(getattr(report, f.name))}")
    return "\n".join(lines) + "\n"


def _json_value(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, tuple):
        return [_json_value(a) for a in v]
    return v


def render_json(report) -> str:
    d = {"report": _KIND[type(report)]}
    for f in fields(report):
        d[f.name] = _json_value(getattr(report, f.name))
    return json.dumps(d)


def report_from_json(text: str):
    d = json.loads(text)
    kind = d.pop("report")
    cls = _BY_KIND[kind]
    if cls is SimplenessReport:
        t = d["worst_tuple"]
        d["worst_tuple"] = None if t is None else tuple(t)
        d["worst_deviation"] = parse_rational(d["worst_deviation"])
    elif cls is IidReport:
        w = d["witness"]
        d["witness"] = None if w is None else tuple(parse_rational(a) for a in w)
    return cls(**d)
