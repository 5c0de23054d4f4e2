"""JSON file formats for graphs and assignments, plus atomic writes.

Graph documents look like::

    {"vertices": [{"id": "a", "weight": 2.0}, ...],
     "edges": [{"u": "a", "v": "b", "weight": 1.5}, ...]}

Assignment documents map vertex id to a part label string::

    {"a": "0", "b": "0", "c": "1"}

Weights default to 1.0 when omitted. Part labels are compacted to dense
indices 0..k-1 in order of first appearance in the document.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import AssignmentFormatError, GraphFormatError
from .graph import Graph, Partition


def atomic_write_text(path, text: str) -> None:
    """Write text to path via a temp file and rename, never a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _weight(record, key, default=1.0):
    w = record.get(key, default)
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        raise GraphFormatError(f"non-numeric weight in {record!r}")
    return float(w)


def graph_from_document(doc) -> Graph:
    """Build a Graph from a parsed graph document."""
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphFormatError("graph document needs 'vertices' and 'edges' lists")
    ids = []
    vweights = []
    for rec in doc["vertices"]:
        if not isinstance(rec, dict) or not isinstance(rec.get("id"), str):
            raise GraphFormatError(f"bad vertex record {rec!r}")
        ids.append(rec["id"])
        vweights.append(_weight(rec, "weight"))
    index = {vid: i for i, vid in enumerate(ids)}
    if len(index) != len(ids):
        seen = set()
        dup = next(v for v in ids if v in seen or seen.add(v))
        raise GraphFormatError(f"duplicate vertex id {dup!r}")
    edges = []
    eweights = []
    for rec in doc["edges"]:
        if not isinstance(rec, dict):
            raise GraphFormatError(f"bad edge record {rec!r}")
        try:
            u = index[rec["u"]]
            v = index[rec["v"]]
        except KeyError as exc:
            raise GraphFormatError(f"edge {rec!r} references unknown vertex {exc}") from None
        edges.append((u, v))
        eweights.append(_weight(rec, "weight"))
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return Graph(ids, np.asarray(vweights), edges, np.asarray(eweights))


def graph_to_document(g: Graph) -> dict:
    return {
        "vertices": [
            {"id": vid, "weight": float(w)} for vid, w in zip(g.ids, g.vertex_weights)
        ],
        "edges": [
            {"u": g.ids[int(u)], "v": g.ids[int(v)], "weight": float(w)}
            for (u, v), w in zip(g.edges, g.edge_weights)
        ],
    }


def partition_from_document(g: Graph, doc) -> Partition:
    """Build a Partition of g from a parsed assignment document."""
    if not isinstance(doc, dict):
        raise AssignmentFormatError("assignment document must be an object")
    index = {vid: i for i, vid in enumerate(g.ids)}
    assignment = np.full(g.num_vertices, -1, dtype=np.int64)
    labels: dict[str, int] = {}
    for vid, label in doc.items():
        i = index.get(vid)
        if i is None:
            raise AssignmentFormatError(f"assignment names unknown vertex {vid!r}")
        if not isinstance(label, str):
            raise AssignmentFormatError(f"part label for {vid!r} must be a string")
        if assignment[i] != -1:
            raise AssignmentFormatError(f"vertex {vid!r} assigned twice")
        part = labels.setdefault(label, len(labels))
        assignment[i] = part
    if np.any(assignment < 0):
        missing = g.ids[int(np.flatnonzero(assignment < 0)[0])]
        raise AssignmentFormatError(f"vertex {missing!r} has no part")
    return Partition.from_assignment(g, assignment, len(labels))


def partition_to_document(g: Graph, p: Partition) -> dict:
    return {vid: str(int(part)) for vid, part in zip(g.ids, p.assignment)}


def load_graph(path) -> Graph:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: {exc}") from None
    return graph_from_document(doc)


def save_graph(g: Graph, path) -> None:
    atomic_write_text(path, json.dumps(graph_to_document(g), indent=1) + "\n")


def load_partition(g: Graph, path) -> Partition:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AssignmentFormatError(f"{path}: {exc}") from None
    return partition_from_document(g, doc)


def save_partition(g: Graph, p: Partition, path) -> None:
    atomic_write_text(path, json.dumps(partition_to_document(g, p), indent=1) + "\n")
