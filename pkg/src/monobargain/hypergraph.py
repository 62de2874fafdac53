"""Hypergraphs over a labelled ground set, stored as bitmask edges.

Covers duality checking, exact dualization by Berge multiplication, outcome
identification, and the self-dual and dual-pair families (Fano plane, wheels,
symmetric k/l-subset pairs, Seymour's join).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BoundExceededError, EmptyCellError
from .monotone import Correspondence, outcome_label

MAX_DUALIZE_GROUND = 20


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _edge_key(mask: int) -> tuple:
    return (_popcount(mask), _bits(mask))


@dataclass(frozen=True)
class Hypergraph:
    """Edges are bitmasks over ``ground``; bit k stands for ``ground[k]``.

    Edge order and multiplicity are kept as given.  Use :meth:`canonical` or
    :meth:`same_family` for order-insensitive comparison.
    """

    ground: tuple[str, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground labels must be distinct")
        full = (1 << len(self.ground)) - 1
        for e in self.edges:
            if e == 0:
                raise ValueError("edges must be nonempty")
            if e & ~full:
                raise ValueError("edge outside the ground set")

    @classmethod
    def from_sets(cls, ground: Sequence[str], edges: Iterable[Iterable[str]]) -> "Hypergraph":
        ground = tuple(ground)
        index = {g: k for k, g in enumerate(ground)}
        masks = []
        for edge in edges:
            mask = 0
            for label in edge:
                if label not in index:
                    raise ValueError(f"label {label!r} not in ground set")
                mask |= 1 << index[label]
            masks.append(mask)
        return cls(ground, tuple(masks))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def p(self) -> int:
        return len(self.ground)

    def index(self) -> dict[str, int]:
        return {g: k for k, g in enumerate(self.ground)}

    def mask_of(self, labels: Iterable[str]) -> int:
        index = self.index()
        mask = 0
        for label in labels:
            mask |= 1 << index[label]
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[k] for k in _bits(mask))

    def edge_sets(self) -> list[frozenset[str]]:
        return [frozenset(self.labels_of(e)) for e in self.edges]

    def edge_tuples(self) -> list[tuple[str, ...]]:
        return [self.labels_of(e) for e in self.edges]

    def canonical(self) -> tuple[int, ...]:
        """Edges sorted by size, then by ground positions."""
        return tuple(sorted(self.edges, key=_edge_key))

    def same_family(self, other: "Hypergraph") -> bool:
        """Order-insensitive equality of edge multisets over the same ground set."""
        if set(self.ground) != set(other.ground):
            return False
        other = other.reindex(self.ground)
        return self.canonical() == other.canonical()

    def reindex(self, ground: Sequence[str]) -> "Hypergraph":
        """The same hypergraph over a reordered (or enlarged) ground tuple."""
        ground = tuple(ground)
        if ground == self.ground:
            return self
        return Hypergraph.from_sets(ground, self.edge_tuples())

    def sorted(self) -> "Hypergraph":
        return Hypergraph(self.ground, self.canonical())

    def __str__(self):
        return "{" + ", ".join("(" + ",".join(self.labels_of(e)) + ")" for e in self.edges) + "}"


def _minimize(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(set(masks), key=_edge_key):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def sperner_reduce(H: Hypergraph) -> Hypergraph:
    """Drop duplicate edges and every edge that contains another."""
    return Hypergraph(H.ground, tuple(_minimize(H.edges)))


def is_sperner(H: Hypergraph) -> bool:
    edges = H.edges
    for a in range(len(edges)):
        for b in range(len(edges)):
            if a != b and edges[a] & edges[b] == edges[a]:
                return False
    return True


def is_transversal(S, H: Hypergraph) -> bool:
    """True iff S meets every edge of H.  S is a label iterable or a bitmask."""
    mask = S if isinstance(S, int) else H.mask_of(S)
    return all(e & mask for e in H.edges)


def _check_bound(p: int):
    if p > MAX_DUALIZE_GROUND:
        raise BoundExceededError("ground size", p, MAX_DUALIZE_GROUND)


def minimal_transversals(edges: Sequence[int]) -> list[int]:
    """Berge multiplication: fold the edges in one at a time, minimizing as we go."""
    transversals = [0]
    for e in sorted(set(edges), key=_edge_key):
        grown = []
        for t in transversals:
            if t & e:
                grown.append(t)
            else:
                grown.extend(t | (1 << v) for v in _bits(e))
        transversals = _minimize(grown)
    return transversals


def dualize(H: Hypergraph) -> Hypergraph:
    """The Sperner family of all inclusion-minimal transversals of H."""
    _check_bound(H.p)
    if not H.edges:
        raise ValueError("cannot dualize a hypergraph with no edges")
    return Hypergraph(H.ground, tuple(minimal_transversals(H.edges)))


@dataclass(frozen=True)
class DualityVerdict:
    """Outcome of a duality test.

    When ``dual`` is false, ``violates`` names the failed property and
    ``witness`` certifies it:

    * ``"i"``: ``witness`` is an edge of C disjoint from the D-edge in
      ``crossing``; the set contains a C-edge while its complement contains a
      D-edge.
    * ``"t'"``: ``witness`` is a minimal transversal of C that contains no
      edge of D.
    """

    dual: bool
    witness: frozenset | None = None
    violates: str | None = None
    crossing: tuple[frozenset, frozenset] | None = None

    def to_dict(self) -> dict:
        out = {"dual": self.dual}
        if not self.dual:
            out["violates"] = self.violates
            out["witness"] = sorted(self.witness)
            if self.crossing is not None:
                out["crossing"] = [sorted(s) for s in self.crossing]
        return out


def align(C: Hypergraph, D: Hypergraph) -> tuple[Hypergraph, Hypergraph]:
    """Put both hypergraphs on C's ground order (extended by D-only labels)."""
    if C.ground == D.ground:
        return C, D
    ground = C.ground + tuple(g for g in D.ground if g not in set(C.ground))
    return C.reindex(ground), D.reindex(ground)


def check_dual(C: Hypergraph, D: Hypergraph) -> DualityVerdict:
    """Decide whether C and D are dual.  Inputs need not be Sperner."""
    C, D = align(C, D)
    _check_bound(C.p)
    for c in C.edges:
        for d in D.edges:
            if not c & d:
                witness = frozenset(C.labels_of(c))
                return DualityVerdict(False, witness, "i", (witness, frozenset(D.labels_of(d))))
    dual_c = set(minimal_transversals(C.edges)) if C.edges else {0}
    reduced_d = set(_minimize(D.edges))
    if dual_c == reduced_d:
        return DualityVerdict(True)
    for t in sorted(dual_c, key=_edge_key):
        if not any(d & t == d for d in reduced_d):
            return DualityVerdict(False, frozenset(C.labels_of(t)), "t'")
    raise AssertionError("duality failed without a witness")  # pragma: no cover


def check_self_dual(H: Hypergraph) -> DualityVerdict:
    return check_dual(H, H)


def row_column_hypergraphs(G: Correspondence) -> tuple[Hypergraph, Hypergraph]:
    """One edge per row (union of its cells) and one per column.  No reduction."""
    ground = tuple(outcome_label(o) for o in G.outcomes)
    index = {g: k for k, g in enumerate(ground)}
    nrows, ncols = G.shape
    row_masks = [0] * nrows
    col_masks = [0] * ncols
    for r, c, cell in G:
        mask = 0
        for o in cell:
            mask |= 1 << index[outcome_label(o)]
        row_masks[r] |= mask
        col_masks[c] |= mask
    return Hypergraph(ground, tuple(row_masks)), Hypergraph(ground, tuple(col_masks))


def merge_outcomes(C: Hypergraph, D: Hypergraph, partition: Sequence[Sequence[str]]):
    """Identify each group of labels into a single fresh label.

    Singleton groups keep their label; larger groups become ``"a+b+..."``.
    """
    C, D = align(C, D)
    seen: set[str] = set()
    for group in partition:
        if not group:
            raise ValueError("empty group in partition")
        for label in group:
            if label not in C.ground:
                raise ValueError(f"unknown label {label!r} in partition")
            if label in seen:
                raise ValueError(f"label {label!r} appears in two groups")
            seen.add(label)
    if seen != set(C.ground):
        missing = sorted(set(C.ground) - seen)
        raise ValueError(f"partition does not cover {missing}")

    index = C.index()
    new_ground = []
    remap = [0] * C.p
    for k, group in enumerate(partition):
        new_ground.append(group[0] if len(group) == 1 else "+".join(group))
        for label in group:
            remap[index[label]] = k
    if len(set(new_ground)) != len(new_ground):
        raise ValueError("merged labels collide with existing labels")

    def push(mask):
        out = 0
        for b in _bits(mask):
            out |= 1 << remap[b]
        return out

    ground = tuple(new_ground)
    return (Hypergraph(ground, tuple(push(e) for e in C.edges)),
            Hypergraph(ground, tuple(push(e) for e in D.edges)))


FANO_EDGES = (
    ("o0", "o1", "o6"), ("o0", "o2", "o5"), ("o0", "o3", "o4"), ("o1", "o2", "o4"),
    ("o1", "o3", "o5"), ("o2", "o3", "o6"), ("o4", "o5", "o6"),
)


def gen_fano() -> Hypergraph:
    """Lines of the Fano plane on o0..o6."""
    return Hypergraph.from_sets([f"o{k}" for k in range(7)], FANO_EDGES)


def gen_wheel(k: int) -> Hypergraph:
    """Hub pairs (o0, oi) for i = 1..k plus the rim (o1, ..., ok)."""
    if k < 2:
        raise ValueError("a wheel needs k >= 2")
    ground = [f"o{v}" for v in range(k + 1)]
    edges = [("o0", f"o{v}") for v in range(1, k + 1)]
    edges.append(tuple(ground[1:]))
    return Hypergraph.from_sets(ground, edges)


def gen_symmetric(k: int, l: int) -> tuple[Hypergraph, Hypergraph]:
    """All k-subsets and all l-subsets of a ground set of size k + l - 1."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    p = k + l - 1
    _check_bound(p)
    ground = [f"o{v}" for v in range(1, p + 1)]
    C = Hypergraph.from_sets(ground, combinations(ground, k))
    D = Hypergraph.from_sets(ground, combinations(ground, l))
    return C, D


def seymour_join(C: Hypergraph, D: Hypergraph, c: str = "c", d: str = "d") -> Hypergraph:
    """Add c to every C-edge, d to every D-edge, plus the edge {c, d}."""
    C, D = align(C, D)
    if c in C.ground or d in C.ground or c == d:
        raise ValueError(f"join labels {c!r}, {d!r} collide with the ground set")
    ground = C.ground + (c, d)
    cb, db = 1 << C.p, 1 << (C.p + 1)
    edges = [e | cb for e in C.edges] + [e | db for e in D.edges] + [cb | db]
    return Hypergraph(ground, tuple(edges))


def induced_correspondence(C: Hypergraph, D: Hypergraph) -> Correspondence:
    """The table G(x, y) = C_x & D_y, rows indexed by C-edges, columns by D-edges."""
    C, D = align(C, D)
    rows = C.edge_tuples()
    cols = D.edge_tuples()
    cells = []
    for r, c_edge in enumerate(C.edges):
        row = []
        for s, d_edge in enumerate(D.edges):
            meet = c_edge & d_edge
            if not meet:
                raise EmptyCellError(rows[r], cols[s])
            row.append(C.labels_of(meet))
        cells.append(row)
    return Correspondence(rows, cols, cells, C.ground)
