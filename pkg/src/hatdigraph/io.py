"""JSON and DOT serialization.

Digraph JSON: ``{"n": 3, "arcs": [[0, 1], ...], "labels": [...]}`` (labels optional).
Presentation JSON: ``{"cells": 2, "varcs": [[0, 1, 1], ...], "labels": [...]}``.
"""

from __future__ import annotations

import json
from typing import Any, Union

from hatdigraph.digraph import Digraph
from hatdigraph.errors import ArgumentError
from hatdigraph.periodic import VoltagePresentation

Obj = Union[Digraph, VoltagePresentation]


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ArgumentError(f"{what} must be an integer, got {x!r}")
    return x


def _pairs(items: Any, width: int, what: str) -> list[tuple[int, ...]]:
    if not isinstance(items, list):
        raise ArgumentError(f"{what} must be an array")
    out = []
    for item in items:
        if not isinstance(item, list) or len(item) != width:
            raise ArgumentError(f"each entry of {what} must be an array of {width} integers, got {item!r}")
        out.append(tuple(_int(x, what) for x in item))
    return out


def _labels(data: dict) -> tuple[str, ...] | None:
    labels = data.get("labels")
    if labels is None:
        return None
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ArgumentError("labels must be an array of strings")
    return tuple(labels)


def digraph_to_json(D: Digraph) -> dict:
    data: dict[str, Any] = {"n": D.n, "arcs": [list(a) for a in D.sorted_arcs]}
    if D.labels is not None:
        data["labels"] = list(D.labels)
    return data


def digraph_from_json(data: dict) -> Digraph:
    n = _int(data.get("n"), "n")
    arcs = _pairs(data.get("arcs", []), 2, "arcs")
    if len(set(arcs)) != len(arcs):
        raise ArgumentError("arcs contain a duplicate pair")
    return Digraph(n, frozenset(arcs), _labels(data))


def presentation_to_json(P: VoltagePresentation) -> dict:
    data: dict[str, Any] = {"cells": P.cells, "varcs": [list(a) for a in P.sorted_varcs]}
    if P.labels is not None:
        data["labels"] = list(P.labels)
    return data


def presentation_from_json(data: dict) -> VoltagePresentation:
    cells = _int(data.get("cells"), "cells")
    varcs = _pairs(data.get("varcs", []), 3, "varcs")
    if len(set(varcs)) != len(varcs):
        raise ArgumentError("varcs contain a duplicate triple")
    return VoltagePresentation(cells, frozenset(varcs), _labels(data))


def to_json(obj: Obj) -> dict:
    if isinstance(obj, Digraph):
        return digraph_to_json(obj)
    if isinstance(obj, VoltagePresentation):
        return presentation_to_json(obj)
    raise ArgumentError(f"cannot serialize {type(obj).__name__}")


def from_json(data: Any) -> Obj:
    if not isinstance(data, dict):
        raise ArgumentError("expected a JSON object")
    if "cells" in data:
        return presentation_from_json(data)
    if "n" in data:
        return digraph_from_json(data)
    raise ArgumentError("JSON object has neither 'n' (digraph) nor 'cells' (presentation)")


def dumps(obj: Obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True)


def loads(text: str) -> Obj:
    return from_json(json.loads(text))


def _level_key(level: str):
    return (0, int(level), "") if level.lstrip("-").isdigit() else (1, 0, level)


def to_dot(D: Digraph, name: str = "G") -> str:
    """DOT text; labels of the form ``level:cell`` become rank=same groups."""
    lines = [f"digraph {name} {{"]
    ranks: dict[str, list[int]] = {}
    for v in range(D.n):
        label = D.label(v)
        lines.append(f'  {v} [label="{label}"];')
        if D.labels is not None and ":" in label:
            ranks.setdefault(label.split(":", 1)[0], []).append(v)
    for level in sorted(ranks, key=_level_key):
        lines.append("  { rank=same; " + " ".join(f"{v};" for v in ranks[level]) + " }")
    for u, v in D.sorted_arcs:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
