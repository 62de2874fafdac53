"""Jordan game correspondences on maps of a square with sides N, E, S, W.

A strategy is an inclusion-minimal set of areas that is connected and touches
two opposite sides.  The map is taken as a combinatorial object (adjacency
and side contacts); no embedding is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BoundExceededError
from .hypergraph import DualityVerdict, Hypergraph, _edge_key, check_dual
from .monotone import Correspondence

SIDES = ("N", "E", "S", "W")
MAX_AREAS = 16


@dataclass(frozen=True)
class PlanarMap:
    areas: tuple[str, ...]
    adjacency: frozenset = field(default_factory=frozenset)
    touches: dict = field(default_factory=dict)

    def __post_init__(self):
        areas = tuple(self.areas)
        object.__setattr__(self, "areas", areas)
        if not areas or len(set(areas)) != len(areas):
            raise ValueError("areas must be distinct and nonempty")
        pairs = set()
        for pair in self.adjacency:
            a, b = tuple(pair)
            if a == b:
                raise ValueError(f"area {a!r} adjacent to itself")
            if a not in areas or b not in areas:
                raise ValueError(f"adjacency {a!r}-{b!r} names an unknown area")
            pairs.add(frozenset((a, b)))
        object.__setattr__(self, "adjacency", frozenset(pairs))
        touches = {s: tuple(self.touches.get(s, ())) for s in SIDES}
        for s, ts in touches.items():
            if not ts:
                raise ValueError(f"side {s} is touched by no area")
            unknown = set(ts) - set(areas)
            if unknown:
                raise ValueError(f"side {s} touched by unknown areas {sorted(unknown)}")
        object.__setattr__(self, "touches", touches)
        if not self._connected():
            raise ValueError("the area graph is not connected")

    def neighbours(self) -> dict[str, set[str]]:
        out = {a: set() for a in self.areas}
        for pair in self.adjacency:
            a, b = tuple(pair)
            out[a].add(b)
            out[b].add(a)
        return out

    def _connected(self) -> bool:
        nb = self.neighbours()
        seen = {self.areas[0]}
        stack = [self.areas[0]]
        while stack:
            for b in nb[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == len(self.areas)

    @classmethod
    def from_dict(cls, data: dict) -> "PlanarMap":
        return cls(tuple(data["areas"]),
                   frozenset(frozenset(p) for p in data.get("adjacency", [])),
                   {s: tuple(v) for s, v in data.get("touches", {}).items()})

    def to_dict(self) -> dict:
        order = {a: k for k, a in enumerate(self.areas)}
        adjacency = sorted((sorted(p, key=order.get) for p in self.adjacency),
                           key=lambda p: [order[a] for a in p])
        return {"areas": list(self.areas), "adjacency": adjacency,
                "touches": {s: list(self.touches[s]) for s in SIDES}}


# Four corner areas around a central diamond o5.  The side labelled E is on
# the left and W on the right.
CORNER_MAP = {
    "areas": ["o1", "o2", "o3", "o4", "o5"],
    "adjacency": [["o1", "o2"], ["o3", "o4"], ["o1", "o3"], ["o2", "o4"],
                  ["o1", "o5"], ["o2", "o5"], ["o3", "o5"], ["o4", "o5"]],
    "touches": {"N": ["o1", "o2"], "E": ["o1", "o3"], "S": ["o3", "o4"], "W": ["o2", "o4"]},
}


def corner_map() -> PlanarMap:
    return PlanarMap.from_dict(CORNER_MAP)


def minimal_connectors(pmap: PlanarMap, sides: tuple[str, str]) -> list[frozenset[str]]:
    """Inclusion-minimal connected area sets touching both ``sides``.

    Every such set is an induced path, so we walk simple paths from the first
    side until they reach the second, then keep the minimal vertex sets.
    Output is sorted by size, then by area order.
    """
    s1, s2 = sides
    if s1 not in SIDES or s2 not in SIDES or s1 == s2:
        raise ValueError(f"bad side pair {sides!r}")
    if len(pmap.areas) > MAX_AREAS:
        raise BoundExceededError("number of areas", len(pmap.areas), MAX_AREAS)
    index = {a: k for k, a in enumerate(pmap.areas)}
    nb = {index[a]: [index[b] for b in sorted(bs, key=index.get)] for a, bs in pmap.neighbours().items()}
    start = {index[a] for a in pmap.touches[s1]}
    goal = {index[a] for a in pmap.touches[s2]}

    found: set[int] = set()

    def walk(v: int, mask: int):
        if v in goal:
            found.add(mask)
            return
        for w in nb[v]:
            if mask >> w & 1 or w in start:
                continue
            # a chord back into the path means a shorter path already exists
            if any(mask >> u & 1 for u in nb[w] if u != v):
                continue
            walk(w, mask | 1 << w)

    for s in sorted(start):
        walk(s, 1 << s)

    kept: list[int] = []
    for mask in sorted(found, key=_edge_key):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return [frozenset(pmap.areas[k] for k in range(len(pmap.areas)) if m >> k & 1) for m in kept]


def connector_hypergraphs(pmap: PlanarMap, rows=("E", "W"), cols=("N", "S")) -> tuple[Hypergraph, Hypergraph]:
    ground = pmap.areas
    order = {a: k for k, a in enumerate(ground)}
    C = Hypergraph.from_sets(ground, [sorted(s, key=order.get) for s in minimal_connectors(pmap, rows)])
    D = Hypergraph.from_sets(ground, [sorted(s, key=order.get) for s in minimal_connectors(pmap, cols)])
    return C, D


def jordan_correspondence(pmap: PlanarMap, rows=("E", "W"), cols=("N", "S")) -> Correspondence:
    """Cells x & y over the two connector families.

    Rows default to the E-W connectors and columns to the N-S ones.  Raises
    EmptyCellError when two connectors miss each other, which happens only if
    the map breaks the degree-3 hypothesis.
    """
    from .hypergraph import induced_correspondence

    C, D = connector_hypergraphs(pmap, rows, cols)
    return induced_correspondence(C, D)


def jordan_tightness(pmap: PlanarMap, rows=("E", "W"), cols=("N", "S")) -> DualityVerdict:
    return check_dual(*connector_hypergraphs(pmap, rows, cols))
