"""JSON file formats for chirotopes, point sets and trees; order-type databases.

Chirotope file, either of::

    {"labels": ["a", "b", "c"], "signs": {"a,b,c": 1}}
    {"labels": ["a", "b", "c"], "points": [[0, 1, 0, 1], [1, 1, 0, 1], [0, 1, 1, 1]]}

Sign keys must be lexicographically sorted triples.  A point is
``[num_x, den_x, num_y, den_y]`` or ``[x, y]`` with integer coordinates.

Tree file::

    {"nodes": [{"id": 0, ...chirotope fields...},
               {"id": 1, "db": {"n": 8, "index": 42}}],
     "edges": [{"u": 0, "u_proxy": "c", "v": 1, "v_proxy": 3}]}

A node with a ``db`` reference takes its points from an order-type
database; its labels default to ``"<id>:<i>"`` and an integer proxy is an
index into the record.

Order-type database: fixed-size records of ``n`` unsigned coordinate pairs
``x0 y0 x1 y1 ...``, one byte per coordinate for n <= 8 and two bytes
(little-endian unless requested otherwise) for n = 9 and 10.
"""
from __future__ import annotations

import json
import os
import warnings
from fractions import Fraction

import numpy as np

from .chirotope import SignFunction, validate_axioms
from .errors import (
    Collinear,
    CollinearRecord,
    IndexOutOfRange,
    ParseError,
)
from .realization import PointConfig, chirotope_of_points
from .tree import ChirotopeTree, Edge


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, offset=exc.colno) from None


def _dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# chirotopes and points


def _parse_point(p, where):
    if not isinstance(p, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in p):
        raise ParseError(f"{where}: point must be a list of integers, got {p!r}")
    if len(p) == 2:
        return (Fraction(p[0]), Fraction(p[1]))
    if len(p) == 4:
        if p[1] == 0 or p[3] == 0:
            raise ParseError(f"{where}: zero denominator in {p!r}")
        return (Fraction(p[0], p[1]), Fraction(p[2], p[3]))
    raise ParseError(f"{where}: point must have 2 or 4 entries, got {p!r}")


def _emit_point(xy):
    x, y = Fraction(xy[0]), Fraction(xy[1])
    if x.denominator == 1 and y.denominator == 1:
        return [x.numerator, y.numerator]
    return [x.numerator, x.denominator, y.numerator, y.denominator]


def _labels_of(obj, where):
    labels = obj.get("labels")
    if not isinstance(labels, list) or not all(isinstance(s, str) and s for s in labels):
        raise ParseError(f"{where}: 'labels' must be a list of non-empty strings")
    if len(set(labels)) != len(labels):
        raise ParseError(f"{where}: repeated label")
    return labels


def sign_function_from_obj(obj, where="chirotope"):
    """SignFunction (from ``signs``) or PointConfig (from ``points``)."""
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    labels = _labels_of(obj, where)
    if "points" in obj:
        pts = obj["points"]
        if not isinstance(pts, list) or len(pts) != len(labels):
            raise ParseError(f"{where}: need one point per label")
        try:
            return PointConfig({lab: _parse_point(p, f"{where} point {lab!r}")
                                for lab, p in zip(labels, pts)})
        except Collinear as exc:
            raise ParseError(f"{where}: {exc}") from None
    if "signs" not in obj or not isinstance(obj["signs"], dict):
        raise ParseError(f"{where}: need 'signs' or 'points'")
    signs = {}
    for key, val in obj["signs"].items():
        parts = key.split(",")
        if len(parts) != 3 or any(p not in labels for p in parts):
            raise ParseError(f"{where}: bad triple key {key!r}")
        if not (parts[0] < parts[1] < parts[2]):
            raise ParseError(f"{where}: triple key {key!r} is not sorted")
        if val not in (1, -1) or isinstance(val, bool):
            raise ParseError(f"{where}: sign of {key!r} must be 1 or -1")
        signs[tuple(parts)] = val
    expected = len(labels) * (len(labels) - 1) * (len(labels) - 2) // 6
    if len(signs) != expected:
        raise ParseError(f"{where}: {expected - len(signs)} triples missing")
    try:
        return SignFunction.from_signs(labels, signs)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_chirotope(text):
    """Parse chirotope text; returns a SignFunction or a PointConfig."""
    return sign_function_from_obj(_loads(text))


def chirotope_to_obj(sf):
    if isinstance(sf, PointConfig):
        labels = sf.labels
        return {"labels": labels, "points": [_emit_point(sf[lab]) for lab in labels]}
    return {"labels": list(sf.labels),
            "signs": {",".join(t): s for t, s in sf.sorted_triples()}}


def emit_chirotope(sf):
    return _dumps(chirotope_to_obj(sf))


def parse_points(text):
    P = parse_chirotope(text)
    if not isinstance(P, PointConfig):
        raise ParseError("expected a 'points' file")
    return P


emit_points = emit_chirotope


# ---------------------------------------------------------------------------
# order-type database


def db_width(n):
    if n <= 8:
        return 1
    if n <= 10:
        return 2
    raise ValueError(f"no database layout for n={n}")


def db_record_size(n):
    return 2 * db_width(n) * n


def _dtype(n, big_endian):
    w = db_width(n)
    if w == 1:
        return np.dtype(np.uint8)
    return np.dtype(">u2" if big_endian else "<u2")


def db_count(path, n):
    size = os.path.getsize(path)
    rec = db_record_size(n)
    if size % rec:
        raise ParseError(f"{path}: size {size} is not a multiple of the record size {rec}",
                         offset=size - size % rec)
    return size // rec


def db_get(path, n, index, big_endian=False, labels=None):
    """Record ``index`` of the database for ``n`` points as a PointConfig."""
    count = db_count(path, n)
    if not 0 <= index < count:
        raise IndexOutOfRange(f"index {index} outside 0..{count - 1}")
    rec = db_record_size(n)
    with open(path, "rb") as fh:
        fh.seek(index * rec)
        raw = fh.read(rec)
    coords = np.frombuffer(raw, dtype=_dtype(n, big_endian)).astype(int).reshape(n, 2)
    labels = labels or [str(i) for i in range(n)]
    try:
        return PointConfig({lab: (int(x), int(y)) for lab, (x, y) in zip(labels, coords)})
    except Collinear as exc:
        raise CollinearRecord(f"record {index}: {exc}") from None


def iter_db(path, n, big_endian=False, skip_collinear=False):
    """Yield ``(index, PointConfig)``; collinear records warn and are skipped on request."""
    for i in range(db_count(path, n)):
        try:
            yield i, db_get(path, n, i, big_endian)
        except CollinearRecord as exc:
            if not skip_collinear:
                raise
            warnings.warn(str(exc))


def write_db(path, configs, n, big_endian=False):
    """Write point lists (each ``n`` non-negative integer pairs) as a database."""
    dt = _dtype(n, big_endian)
    limit = np.iinfo(dt).max
    with open(path, "wb") as fh:
        for pts in configs:
            arr = np.asarray([[int(x), int(y)] for x, y in pts], dtype=np.int64)
            if arr.shape != (n, 2) or arr.min() < 0 or arr.max() > limit:
                raise ValueError(f"record must be {n} coordinate pairs in 0..{limit}")
            fh.write(arr.astype(dt).tobytes())


# ---------------------------------------------------------------------------
# trees


def parse_tree(text, db=None, big_endian=False):
    """Parse a tree file.

    ``db`` maps a point count ``n`` to a database path.  Returns
    ``(tree, points)`` where ``points`` holds the PointConfig of every node
    given by coordinates.
    """
    obj = _loads(text)
    if not isinstance(obj, dict) or not isinstance(obj.get("nodes"), list):
        raise ParseError("tree: expected an object with a 'nodes' list")
    nodes, points, db_labels = {}, {}, {}
    for k, nd in enumerate(obj["nodes"]):
        where = f"node #{k}"
        if not isinstance(nd, dict) or not isinstance(nd.get("id"), int):
            raise ParseError(f"{where}: needs an integer 'id'")
        v = nd["id"]
        if v in nodes:
            raise ParseError(f"{where}: duplicate id {v}")
        if "db" in nd:
            ref = nd["db"]
            if not isinstance(ref, dict) or not {"n", "index"} <= set(ref):
                raise ParseError(f"{where}: 'db' needs 'n' and 'index'")
            n = ref["n"]
            if not db or n not in db:
                raise ParseError(f"{where}: no database given for n={n}")
            labels = nd.get("labels") or [f"{v}:{i}" for i in range(n)]
            db_labels[v] = labels
            P = db_get(db[n], n, ref["index"], big_endian, labels)
        else:
            P = sign_function_from_obj(nd, where)
        if isinstance(P, PointConfig):
            points[v] = P
            nodes[v] = chirotope_of_points(P)
        else:
            nodes[v] = P
    edges = []
    for k, ed in enumerate(obj.get("edges", [])):
        where = f"edge #{k}"
        if not isinstance(ed, dict) or not {"u", "u_proxy", "v", "v_proxy"} <= set(ed):
            raise ParseError(f"{where}: needs u, u_proxy, v, v_proxy")
        ends = []
        for side in ("u", "v"):
            w, p = ed[side], ed[f"{side}_proxy"]
            if w not in nodes:
                raise ParseError(f"{where}: unknown node {w!r}")
            if isinstance(p, int) and not isinstance(p, bool):
                if w in db_labels:
                    p = db_labels[w][p]
                else:
                    p = nodes[w].labels[p]
            ends += [w, str(p)]
        edges.append(Edge(*ends))
    validated = {v: validate_axioms(sf) for v, sf in nodes.items()}
    return ChirotopeTree(validated, edges), points


def tree_to_obj(T: ChirotopeTree, points=None):
    points = points or {}
    nodes = []
    for v in sorted(T.nodes):
        body = chirotope_to_obj(points[v] if v in points else T.nodes[v])
        nodes.append({"id": v, **body})
    edges = [{"u": e.u, "u_proxy": e.u_proxy, "v": e.v, "v_proxy": e.v_proxy} for e in T.edges]
    return {"nodes": nodes, "edges": edges}


def emit_tree(T: ChirotopeTree, points=None):
    return _dumps(tree_to_obj(T, points))


def load_any(text, db=None, big_endian=False):
    """Tree files become ``(tree, points)``; chirotope files a single node tree."""
    obj = _loads(text)
    if isinstance(obj, dict) and "nodes" in obj:
        return parse_tree(text, db, big_endian)
    sf = sign_function_from_obj(obj)
    if isinstance(sf, PointConfig):
        return ChirotopeTree.single(chirotope_of_points(sf)), {0: sf}
    return ChirotopeTree.single(validate_axioms(sf)), {}


__all__ = [
    "parse_chirotope", "emit_chirotope", "parse_points", "emit_points",
    "parse_tree", "emit_tree", "tree_to_obj", "chirotope_to_obj", "load_any",
    "db_get", "db_count", "db_width", "db_record_size", "iter_db", "write_db",
]
