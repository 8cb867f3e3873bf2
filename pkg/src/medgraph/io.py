"""Instance files and CSV reports.

Instance files are JSON documents::

    {
      "format_version": 1,
      "n": 3,
      "m": 2,
      "generator": {...},            # optional provenance, ignored on read
      "graphs": [
        {"vertex_weights": [0.5, 1.0, 0.25], "edges": [[1, 2, 0.75]]},
        ...
      ]
    }

Vertex indices in ``edges`` are 1-based with ``r < s``; pairs that are not
listed have weight 0.  Graphs smaller than ``n`` are padded with null
vertices when read.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from .bounds import BoundReport
from .graph import WEIGHT_TOL, AttributedGraph, GraphSet, pad_to_size

FORMAT_VERSION = 1
REPORT_HEADER = ("instance_id", "cost", "cl", "gm", "gm_approx", "dist_medians",
                 "check_name", "lhs", "rel", "rhs", "slack", "pass")

PathLike = Union[str, os.PathLike]


class DocumentError(ValueError):
    """Malformed or invalid instance document."""


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    return obj[key]


def _weight(x: Any, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DocumentError(f"{where}: weight must be a number, got {x!r}")
    w = float(x)
    if not (-WEIGHT_TOL <= w <= 1.0 + WEIGHT_TOL):
        raise DocumentError(f"{where}: weight {w!r} out of range [0, 1]")
    return min(max(w, 0.0), 1.0)


def _index(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: vertex index must be an integer, got {x!r}")
    return x


def graphset_from_document(doc: Any) -> GraphSet:
    """Validate a parsed document and build a padded :class:`GraphSet`."""
    version = _field(doc, "format_version", "document")
    if version != FORMAT_VERSION:
        raise DocumentError(f"document: unsupported format_version {version!r}")
    raw = _field(doc, "graphs", "document")
    if not isinstance(raw, list) or not raw:
        raise DocumentError("document.graphs: must be a non-empty list")
    m = _field(doc, "m", "document")
    if m != len(raw):
        raise DocumentError(f"document.m: declares {m!r} graphs but {len(raw)} are listed")
    n_doc = _field(doc, "n", "document")
    if isinstance(n_doc, bool) or not isinstance(n_doc, int) or n_doc < 1:
        raise DocumentError(f"document.n: must be a positive integer, got {n_doc!r}")

    graphs = []
    for gi, entry in enumerate(raw):
        where = f"graphs[{gi}]"
        vw = _field(entry, "vertex_weights", where)
        if not isinstance(vw, list) or not vw:
            raise DocumentError(f"{where}.vertex_weights: must be a non-empty list")
        n = len(vw)
        if n > n_doc:
            raise DocumentError(f"{where}: has {n} vertices but document n is {n_doc}")
        v = np.array([_weight(x, f"{where}.vertex_weights[{k}]") for k, x in enumerate(vw)])
        e = np.zeros((n, n))
        seen = set()
        edges = entry.get("edges", [])
        if not isinstance(edges, list):
            raise DocumentError(f"{where}.edges: must be a list")
        for k, item in enumerate(edges):
            ew = f"{where}.edges[{k}]"
            if not isinstance(item, list) or len(item) != 3:
                raise DocumentError(f"{ew}: expected [r, s, weight]")
            r, s = _index(item[0], ew), _index(item[1], ew)
            if r >= s:
                raise DocumentError(f"{ew}: requires r < s, got r={r}, s={s}")
            if r < 1 or s > n:
                raise DocumentError(f"{ew}: vertex index out of range 1..{n}")
            if (r, s) in seen:
                raise DocumentError(f"{ew}: duplicate edge ({r}, {s})")
            seen.add((r, s))
            e[r - 1, s - 1] = e[s - 1, r - 1] = _weight(item[2], ew)
        graphs.append(pad_to_size(AttributedGraph(v, e), n_doc))
    return GraphSet(tuple(graphs))


def parse_graphset(path: PathLike) -> GraphSet:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return graphset_from_document(doc)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def graphset_document(gs: GraphSet, generator: Optional[dict] = None) -> dict:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "n": gs.n, "m": gs.m}
    if generator is not None:
        doc["generator"] = generator
    doc["graphs"] = [
        {"vertex_weights": [float(x) for x in g.vertex_weights],
         "edges": [[r + 1, s + 1, w] for r, s, w in g.edges()]}
        for g in gs
    ]
    return doc


def dumps_graphset(gs: GraphSet, generator: Optional[dict] = None) -> str:
    """Serialise with one graph per line; floats use Python's round-trip repr."""
    doc = graphset_document(gs, generator)
    lines = ["{"]
    for key in ("format_version", "n", "m", "generator"):
        if key in doc:
            lines.append(f'  "{key}": {json.dumps(doc[key], sort_keys=True)},')
    lines.append('  "graphs": [')
    body = [f"    {json.dumps(g)}" for g in doc["graphs"]]
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_graphset(gs: GraphSet, path: PathLike, generator: Optional[dict] = None) -> None:
    Path(path).write_text(dumps_graphset(gs, generator))


def _pass_text(value: Optional[bool]) -> str:
    return "n/a" if value is None else ("true" if value else "false")


def report_rows(reports: Iterable[BoundReport]) -> list[tuple[str, ...]]:
    rows = []
    for rep in reports:
        for c in rep.checks:
            rows.append((rep.instance_id, rep.cost_kind, repr(rep.cl_value), repr(rep.gm_value),
                         repr(rep.gm_approx_value), repr(rep.dist_medians), c.name,
                         repr(c.lhs), c.relation, repr(c.rhs), repr(c.slack), _pass_text(c.passed)))
    rows.sort(key=lambda r: (r[0], r[6]))
    return rows


def dumps_report(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    w.writerows(report_rows(reports))
    return buf.getvalue()


def write_report(reports: Iterable[BoundReport], path: PathLike) -> None:
    Path(path).write_text(dumps_report(reports))


def read_report(path: PathLike) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != REPORT_HEADER:
            raise DocumentError(f"{path}: unexpected CSV header {reader.fieldnames}")
        return list(reader)
