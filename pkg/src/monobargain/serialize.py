"""JSON encodings for strategies, tables, hypergraphs, utilities and reports.

Decoders raise ParseError on malformed input.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .hypergraph import DualityVerdict, Hypergraph
from .monotone import Correspondence, MonotoneMap
from .solver import SimpleEquilibrium, UtilityProfile


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _require(data, key):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing key {key!r}")
    return data[key]


def _jsonable(o):
    if isinstance(o, tuple):
        return [_jsonable(v) for v in o]
    if isinstance(o, MonotoneMap):
        return list(o.values)
    return o


def strategy_to_json(s: MonotoneMap) -> list[int]:
    return list(s.values)


def strategy_from_json(data, codomain: int) -> MonotoneMap:
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise ParseError("a strategy is a JSON array of integers")
    try:
        return MonotoneMap(tuple(data), codomain)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def correspondence_to_json(G: Correspondence) -> dict:
    """Cells are listed row-major, each as a list of outcomes."""
    out = {}
    if G.m is not None:
        out["m"], out["n"] = G.m, G.n
    out["rows"] = [_jsonable(r) for r in G.rows]
    out["cols"] = [_jsonable(c) for c in G.cols]
    out["cells"] = [[_jsonable(o) for o in cell] for _, _, cell in G]
    return out


def correspondence_from_json(data) -> Correspondence:
    rows, cols, flat = _require(data, "rows"), _require(data, "cols"), _require(data, "cells")
    if len(flat) != len(rows) * len(cols):
        raise ParseError(f"expected {len(rows) * len(cols)} cells, got {len(flat)}")

    def outcome(o):
        return tuple(o) if isinstance(o, list) else o

    cells = [[tuple(outcome(o) for o in flat[r * len(cols) + c]) for c in range(len(cols))]
             for r in range(len(rows))]
    if any(not cell for row in cells for cell in row):
        raise ParseError("every cell must be nonempty")
    m, n = data.get("m"), data.get("n")
    if m is not None:
        outcomes = tuple((i, j) for i in range(1, m + 1) for j in range(1, n + 1))
        rows = [strategy_from_json(r, n) for r in rows]
        cols = [strategy_from_json(c, m) for c in cols]
    else:
        seen = {}
        for row in cells:
            for cell in row:
                for o in cell:
                    seen.setdefault(o, None)
        outcomes = tuple(seen)
    return Correspondence(rows, cols, cells, outcomes, m, n)


def hypergraph_to_json(H: Hypergraph) -> dict:
    return {"ground": list(H.ground), "edges": [list(e) for e in H.edge_tuples()]}


def hypergraph_from_json(data) -> Hypergraph:
    ground = _require(data, "ground")
    edges = _require(data, "edges")
    if not all(isinstance(g, str) for g in ground):
        raise ParseError("ground labels must be strings")
    try:
        return Hypergraph.from_sets(ground, edges)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def pair_to_json(C: Hypergraph, D: Hypergraph) -> dict:
    return {"C": hypergraph_to_json(C), "D": hypergraph_to_json(D)}


def pair_from_json(data) -> tuple[Hypergraph, Hypergraph]:
    return hypergraph_from_json(_require(data, "C")), hypergraph_from_json(_require(data, "D"))


def verdict_to_json(v: DualityVerdict) -> dict:
    return v.to_dict()


def utility_to_json(u: UtilityProfile, m: int | None = None, n: int | None = None) -> dict:
    """Grid form when m, n are given, else label-keyed dicts."""
    if m is not None:
        return {"m": m, "n": n,
                "uA": [[u.uA[(i, j)] for j in range(1, n + 1)] for i in range(1, m + 1)],
                "uB": [[u.uB[(i, j)] for j in range(1, n + 1)] for i in range(1, m + 1)]}
    return {"uA": {str(o): u.uA[o] for o in u.outcomes}, "uB": {str(o): u.uB[o] for o in u.outcomes}}


def utility_from_json(data) -> tuple[UtilityProfile, int | None, int | None]:
    """Accepts {"m","n","uA":[[...]],"uB":[[...]]} or {"uA":{label: v}, "uB":{label: v}}."""
    uA, uB = _require(data, "uA"), _require(data, "uB")
    try:
        if isinstance(uA, dict):
            if set(uA) != set(uB):
                raise ParseError("uA and uB must cover the same outcomes")
            return UtilityProfile(tuple(uA), dict(uA), dict(uB)), None, None
        u = UtilityProfile.from_grid(uA, uB)
    except ParseError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed utility: {exc}") from exc
    m, n = len(uA), len(uA[0])
    if data.get("m", m) != m or data.get("n", n) != n:
        raise ParseError(f"declared size {data.get('m')}x{data.get('n')} does not match the {m}x{n} tables")
    if any(isinstance(v, bool) or not isinstance(v, int) for row in uA + uB for v in row):
        raise ParseError("utilities must be integers")
    return u, m, n


def outcome_set_to_json(W) -> list:
    return [list(o) for o in sorted(W)]


def equilibrium_to_json(e: SimpleEquilibrium) -> dict:
    return {
        "x": _jsonable(e.x_star),
        "y": _jsonable(e.y_star),
        "outcome": _jsonable(e.o_star),
        "trace": [{"to": step["to"], "outcomes": [_jsonable(o) for o in step["outcomes"]]} for step in e.trace],
    }


def equilibrium_from_json(data, m: int, n: int) -> tuple[MonotoneMap, MonotoneMap]:
    return strategy_from_json(_require(data, "x"), n), strategy_from_json(_require(data, "y"), m)
