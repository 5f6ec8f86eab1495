"""JSON export of matrices and modules, DOT export of crystal graphs.

Matrices are stored as sparse triplets::

    {"rows": 4, "cols": 4, "entries": [[0, 0, "1"], [1, 1, "(2*q^(1)) / (q^(2) + 1)"], ...]}

with scalars in the text grammar of :mod:`qcommutor.scalars`.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .cartan import build_datum
from .crystal import AbstractCrystal, components, node_label
from .linalg import Matrix
from .repn import LinOp, ModuleRep
from .scalars import parse_scalar, render


class FormatError(ValueError):
    pass


def matrix_to_json(m: Matrix) -> dict:
    entries = [[r, c, render(v)] for r, c, v in sorted(m.entries(), key=lambda t: (t[0], t[1]))]
    return {"rows": m.nrows, "cols": m.ncols, "entries": entries}


def matrix_from_json(obj: dict) -> Matrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        data: dict = {}
        for r, c, text in obj["entries"]:
            if not (0 <= r < rows and 0 <= c < cols):
                raise FormatError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            v = parse_scalar(text)
            if v:
                data.setdefault(int(r), {})[int(c)] = v
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed matrix object: {exc}") from exc
    return Matrix(rows, cols, data)


def module_to_json(mod: ModuleRep) -> dict:
    datum = mod.datum
    out: dict[str, Any] = {
        "name": mod.name,
        "cartan": datum.name,
        "cartan_matrix": [list(r) for r in datum.cartan],
        "d": list(datum.d),
        "dim": mod.dim,
        "labels": list(mod.labels),
        "weights": [list(w) for w in mod.weights],
        "E": [matrix_to_json(m) for m in mod.E],
        "F": [matrix_to_json(m) for m in mod.F],
    }
    if mod.highest_weight is not None:
        out["highest_weight"] = list(mod.highest_weight)
    if mod.parents:
        out["parents"] = {str(k): list(v) for k, v in sorted(mod.parents.items())}
    return out


def module_from_json(obj: dict) -> ModuleRep:
    try:
        datum = build_datum(cartan=obj["cartan_matrix"], d=obj["d"])
        if obj.get("cartan") and obj["cartan"] != "custom":
            named = build_datum(obj["cartan"])
            if named.cartan == datum.cartan and named.d == datum.d:
                datum = named
        weights = [tuple(w) for w in obj["weights"]]
        E = [matrix_from_json(m) for m in obj["E"]]
        F = [matrix_from_json(m) for m in obj["F"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed module object: {exc}") from exc
    if len(weights) != obj.get("dim", len(weights)):
        raise FormatError("dimension does not match the weight list")
    hw = obj.get("highest_weight")
    parents = {int(k): tuple(v) for k, v in obj.get("parents", {}).items()}
    return ModuleRep(datum, weights, list(obj["labels"]), E, F, name=obj.get("name", ""),
                     highest_weight=None if hw is None else tuple(hw), parents=parents)


def linop_to_json(op: LinOp) -> dict:
    return {"source": op.source.name, "target": op.target.name, "matrix": matrix_to_json(op.matrix)}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# crystal graphs
# --------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def crystal_to_dot(c: AbstractCrystal, commutor: dict | None = None, name: str = "crystal") -> str:
    """DOT digraph: nodes labelled ``wt=<coords>``, edges ``f<i>``, one cluster per component.

    With ``commutor`` (a node map into another crystal) each node carries a
    ``sigma`` attribute naming its image.
    """
    lines = [f"digraph {_quote(name)} {{"]
    for k, comp in enumerate(components(c)):
        hw = ",".join(map(str, comp.highest_weight))
        lines.append(f"  subgraph {_quote(f'cluster_{k}')} {{")
        lines.append(f"    label={_quote(f'hw=({hw})')};")
        for b in comp.nodes:
            wt = ",".join(map(str, c.wt[b]))
            attrs = [f"label={_quote(f'wt=({wt})')}"]
            if commutor is not None:
                attrs.append(f"sigma={_quote(node_label(commutor[b]))}")
            lines.append(f"    {_quote(node_label(b))} [{', '.join(attrs)}];")
        lines.append("  }")
    for i, b, t in sorted(c.edges(), key=lambda e: (e[0], node_label(e[1]))):
        lines.append(f"  {_quote(node_label(b))} -> {_quote(node_label(t))} [label={_quote(f'f{i + 1}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*\[(.*)\];\s*$')
_DOT_EDGE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"\s*\[label="f(\d+)"\];\s*$')
_DOT_ATTR = re.compile(r'(\w+)="((?:[^"\\]|\\.)*)"')


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def parse_dot(text: str) -> dict:
    """Read back :func:`crystal_to_dot` output as ``{"nodes": {...}, "edges": [...]}``."""
    nodes: dict = {}
    edges: list = []
    for line in text.splitlines():
        m = _DOT_EDGE.match(line)
        if m:
            edges.append((_unquote(m.group(1)), _unquote(m.group(2)), int(m.group(3))))
            continue
        m = _DOT_NODE.match(line)
        if m:
            attrs = {k: _unquote(v) for k, v in _DOT_ATTR.findall(m.group(2))}
            nodes[_unquote(m.group(1))] = attrs
    return {"nodes": nodes, "edges": edges}


def crystal_to_json(c: AbstractCrystal) -> dict:
    comps = []
    counts: dict = {}
    for comp in components(c):
        k = counts.get(comp.highest_weight, 0)
        counts[comp.highest_weight] = k + 1
        comps.append({"id": f"{','.join(map(str, comp.highest_weight))}#{k}",
                      "highest_weight": list(comp.highest_weight),
                      "source": node_label(comp.source), "sink": node_label(comp.sink),
                      "nodes": [node_label(b) for b in comp.nodes]})
    return {"name": c.name, "nodes": len(c.nodes), "components": comps}


__all__ = [
    "FormatError",
    "matrix_to_json",
    "matrix_from_json",
    "module_to_json",
    "module_from_json",
    "linop_to_json",
    "dumps",
    "crystal_to_dot",
    "parse_dot",
    "crystal_to_json",
]
