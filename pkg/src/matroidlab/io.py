"""JSON file formats: systems, matrices, families, gluings, edits, reports.

Loaders take parsed objects (call read_json for a path) and raise InputError
on malformed input.  Dumpers produce plain JSON-ready objects; json_text
renders them byte-stably so equal inputs yield equal report files.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from io import StringIO
from pathlib import Path

from . import __version__
from .core import GroundSet, explicit_system, family_masks, graphic_matroid, uniform_matroid
from .cycles import GluingSpec
from .errors import InputError
from .linear import GF2, Q, MatrixRep, PeriodicMatrixSpec, linear_matroid
from .ops import NestedPair
from .periodic import PeriodicGraphSpec, UPEdgeSet
from .util import iter_bits


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _require(obj, key, context):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{context} needs a {key!r} field")
    return obj[key]


# ---------------------------------------------------------------------------
# independence systems


def load_system(obj):
    """{"ground": [labels], "kind": ..., payload keys per kind} -> system."""
    labels = _require(obj, "ground", "system file")
    ground = GroundSet.named(labels)
    kind = _require(obj, "kind", "system file")
    if kind == "explicit":
        sets = _require(obj, "independent", "explicit system")
        try:
            masks = [ground.mask(s) for s in sets]
        except TypeError:
            raise InputError("independent sets must be arrays of element indices") from None
        return explicit_system(ground, masks)
    if kind == "uniform":
        rank = _require(obj, "rank", "uniform system")
        return uniform_matroid(int(rank), ground.size, labels=labels)
    if kind == "graphic":
        n = int(_require(obj, "vertices", "graphic system"))
        edges = _require(obj, "edges", "graphic system")
        if len(edges) != ground.size:
            raise InputError("graphic ground size must match the edge count")
        return graphic_matroid(n, [tuple(e) for e in edges], labels=labels)
    if kind == "linear":
        m = load_matrix(_require(obj, "matrix", "linear system"))
        if m.col_labels != ground.labels:
            raise InputError("linear ground must equal the matrix column labels")
        return linear_matroid(m)
    raise InputError(f"unknown system kind {kind!r}")


def dump_system(sys_) -> dict:
    """Explicit system file for any finite system; masks ordered canonically."""
    fam = sorted(family_masks(sys_), key=lambda s: (s.bit_count(), s))
    return {
        "ground": list(sys_.ground.labels),
        "kind": "explicit",
        "independent": [list(iter_bits(s)) for s in fam],
    }


def load_nested_pair(obj) -> NestedPair:
    return NestedPair(
        inner=load_system(_require(obj, "inner", "nested pair file")),
        outer=load_system(_require(obj, "outer", "nested pair file")),
    )


# ---------------------------------------------------------------------------
# matrices


def load_matrix(obj) -> MatrixRep:
    """{"field", "rows": [labels], "cols": [labels], "entries": [[r,c,val],...]}."""
    field = _require(obj, "field", "matrix file")
    if field not in (GF2, Q):
        raise InputError(f"unknown field {field!r}")
    rows = [str(r) for r in _require(obj, "rows", "matrix file")]
    cols = [str(c) for c in _require(obj, "cols", "matrix file")]
    zero = 0 if field == GF2 else Fraction(0)
    dense = {(r, c): zero for r in rows for c in cols}

    def resolve(key, pool, what):
        if isinstance(key, str):
            if key not in pool:
                raise InputError(f"unknown {what} label {key!r}")
            return key
        try:
            return pool[key]
        except (IndexError, TypeError):
            raise InputError(f"{what} reference {key!r} out of range") from None

    for entry in _require(obj, "entries", "matrix file"):
        if len(entry) != 3:
            raise InputError(f"matrix entry must be [row, col, value]: {entry!r}")
        r, c, val = entry
        r, c = resolve(r, rows, "row"), resolve(c, cols, "column")
        dense[(r, c)] = int(val) % 2 if field == GF2 else Fraction(str(val))
    return MatrixRep(
        field=field,
        row_labels=tuple(rows),
        col_labels=tuple(cols),
        columns=tuple(tuple(dense[(r, c)] for r in rows) for c in cols),
    )


def dump_matrix(m: MatrixRep) -> dict:
    entries = []
    for c, col in zip(m.col_labels, m.columns):
        for r, val in zip(m.row_labels, col):
            if val:
                entries.append([r, c, str(val) if m.field == Q else int(val)])
    return {
        "field": m.field,
        "rows": list(m.row_labels),
        "cols": list(m.col_labels),
        "entries": entries,
    }


def load_matrix_family(obj) -> PeriodicMatrixSpec:
    """Window-repeated column family.

    {"field", "persistent_rows", "block_rows", "block_cols": [[[ref, val],...],...]}
    where ref is ["p", row] or ["b", row, 0|1].
    """
    field = _require(obj, "field", "matrix family file")
    if field not in (GF2, Q):
        raise InputError(f"unknown field {field!r}")

    def value(v):
        return int(v) if field == GF2 else Fraction(str(v))

    cols = []
    for pattern in _require(obj, "block_cols", "matrix family file"):
        entries = []
        for item in pattern:
            if len(item) != 2:
                raise InputError(f"pattern entry must be [rowref, value]: {item!r}")
            ref, val = item
            ref = list(ref) if isinstance(ref, (list, tuple)) else [ref]
            if ref and ref[0] == "p" and len(ref) == 2:
                ref = ("p", str(ref[1]))
            elif ref and ref[0] == "b" and len(ref) == 3:
                ref = ("b", str(ref[1]), int(ref[2]))
            else:
                raise InputError(f"row reference must be ['p', row] or ['b', row, 0|1]: {ref!r}")
            entries.append((ref, value(val)))
        cols.append(tuple(entries))
    return PeriodicMatrixSpec(
        field=field,
        persistent_rows=tuple(str(r) for r in obj.get("persistent_rows", [])),
        block_rows=tuple(str(r) for r in obj.get("block_rows", [])),
        block_cols=tuple(cols),
    )


# ---------------------------------------------------------------------------
# periodic families


def _edge_entry(entry, default_role, context):
    entry = list(entry)
    if len(entry) == 2:
        entry.append(default_role)
    if len(entry) != 3:
        raise InputError(f"{context} edge must be [u, v] or [u, v, role]: {entry!r}")
    return entry


def _pref_ref(ref):
    if isinstance(ref, str):
        return ref
    if isinstance(ref, (list, tuple)) and len(ref) == 2 and ref[0] == "r":
        return ("r", str(ref[1]))
    raise InputError(f"prefix endpoint must be a name or ['r', lane]: {ref!r}")


def load_family(obj) -> PeriodicGraphSpec:
    prefix = obj.get("prefix", {})
    repeat = _require(obj, "repeat", "family file")
    pre_edges = tuple(
        (_pref_ref(u), _pref_ref(v), str(role))
        for u, v, role in (
            _edge_entry(e, "link", "prefix") for e in prefix.get("edges", [])
        )
    )
    win_edges = tuple(
        (str(u), str(v), str(role))
        for u, v, role in (
            _edge_entry(e, "window", "repeat") for e in repeat.get("edges", [])
        )
    )
    spl_edges = tuple(
        (str(u), str(v), str(role))
        for u, v, role in (
            _edge_entry(e, "splice", "splice") for e in obj.get("splice", [])
        )
    )
    apex_edges = []
    for block in obj.get("apex", []):
        vertex = str(_require(block, "vertex", "apex block"))
        for item in _require(block, "per_block_edges", "apex block"):
            entry = [item, "apex"] if isinstance(item, str) else list(item)
            if len(entry) != 2:
                raise InputError(f"apex edge must be lane or [lane, role]: {item!r}")
            apex_edges.append((vertex, str(entry[0]), str(entry[1])))
    return PeriodicGraphSpec(
        prefix_vertices=tuple(str(v) for v in prefix.get("vertices", [])),
        repeat_vertices=tuple(str(v) for v in _require(repeat, "vertices", "repeat")),
        prefix_edges=pre_edges,
        window_edges=win_edges,
        splice_edges=spl_edges,
        apex_edges=tuple(apex_edges),
        ends=tuple(str(e) for e in obj.get("ends", [])),
    )


def dump_family(g: PeriodicGraphSpec) -> dict:
    apex_blocks = {}
    for a, lane, role in g.apex_edges:
        apex_blocks.setdefault(a, []).append([lane, role])
    return {
        "prefix": {
            "vertices": list(g.prefix_vertices),
            "edges": [
                [list(u) if isinstance(u, tuple) else u,
                 list(v) if isinstance(v, tuple) else v,
                 role]
                for u, v, role in g.prefix_edges
            ],
        },
        "repeat": {
            "vertices": list(g.repeat_vertices),
            "edges": [list(e) for e in g.window_edges],
        },
        "splice": [list(e) for e in g.splice_edges],
        "apex": [
            {"vertex": a, "per_block_edges": edges}
            for a, edges in sorted(apex_blocks.items())
        ],
        "ends": list(g.ends),
    }


def load_edge_set(obj) -> UPEdgeSet:
    return UPEdgeSet.from_obj(obj)


def load_gluing(obj) -> GluingSpec:
    groups = _require(obj, "groups", "gluing file")
    psi = _require(obj, "psi", "gluing file")
    try:
        return GluingSpec(
            tuple(tuple(str(x) for x in grp) for grp in groups),
            tuple(int(i) for i in psi),
        )
    except TypeError:
        raise InputError("gluing groups must be arrays of end labels") from None


def dump_gluing(glue: GluingSpec) -> dict:
    return {"groups": [list(g) for g in glue.groups], "psi": list(glue.psi)}


def load_edit(obj, base_dir=None):
    """{"base": <family file path or object>, "delete": [...], "contract": [...]}.

    Returns (family, delete_instances, contract_instances).
    """
    base = _require(obj, "base", "edit file")
    if isinstance(base, str):
        path = Path(base)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        base = read_json(path)
    family = load_family(base)

    def instances(key):
        return [tuple(item) for item in obj.get(key, [])]

    return family, instances("delete"), instances("contract")


# ---------------------------------------------------------------------------
# reports


def spectrum_csv(report) -> str:
    body = report.to_dict()
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "witness"])
    for value in body["values"]:
        writer.writerow([value, json.dumps(body["witnesses"][str(value)], sort_keys=True)])
    return buf.getvalue()


def envelope(result, config: dict, seed=None) -> dict:
    """Uniform report wrapper: tool version, echoed config, then the payload."""
    return {
        "tool": "matroidlab",
        "version": __version__,
        "config": config,
        "seed": seed,
        "result": result,
    }
