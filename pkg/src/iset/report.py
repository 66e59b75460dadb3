"""Structured reports: a key-value tree emitted as YAML (default) or JSON."""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction

import yaml

from . import __version__
from .counting import BigCount
from .graph import Graph

PAYLOAD_KEYS = ("artifact", "config", "graph_stats", "result", "trace", "verdicts")


def plain(obj):
    """Convert results into JSON/YAML-safe builtins."""
    if isinstance(obj, BigCount):
        return {"decimal": str(obj.value), "log2": obj.log2}
    if isinstance(obj, Fraction):
        return float(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(x) for x in obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def graph_stats(g: Graph, source: str) -> dict:
    t = g.t
    return {
        "source": source,
        "n": g.n,
        "e": g.e,
        "t": f"{t.numerator}/{t.denominator}" if t.denominator != 1 else str(t.numerator),
        "t_float": float(t),
        "max_degree": g.max_degree(),
        "triangle_free": g.is_triangle_free(),
    }


def build(command: str, config: dict, stats: dict | None, result: dict,
          trace=None, verdicts=None, timing: dict | None = None) -> dict:
    doc = {
        "artifact": {"name": "iset", "version": __version__, "command": command},
        "config": config,
    }
    if stats is not None:
        doc["graph_stats"] = stats
    doc["result"] = result
    if trace is not None:
        doc["trace"] = trace
    if verdicts is not None:
        doc["verdicts"] = verdicts
    doc["timing"] = timing or {}
    return plain(doc)


def payload(doc: dict) -> dict:
    """The report without its run-environment ``timing`` block."""
    return {k: v for k, v in doc.items() if k != "timing"}


def dumps(doc: dict, as_json: bool = False) -> str:
    if as_json:
        return json.dumps(doc, indent=2) + "\n"
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)
