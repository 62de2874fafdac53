"""Monotone strategies, deals, and the bargaining correspondence G_{m,n}.

Alice owns items a_1 < ... < a_m and Bob owns b_1 < ... < b_n.  A strategy of
Alice is a non-decreasing map x: {1..m} -> {1..n}; Bob's is a non-decreasing
map y: {1..n} -> {1..m}.  The pair (i, j) is a deal of (x, y) when x(i) = j
and y(j) = i.  All indices are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Hashable, Iterable, Sequence

from .errors import BoundExceededError, InvalidDealSetError

Outcome = tuple  # (i, j) for two players, (i, j, l) for three

DEFAULT_BUILD_BOUND = 36


@dataclass(frozen=True)
class MonotoneMap:
    """A non-decreasing map {1..len(values)} -> {1..codomain}."""

    values: tuple[int, ...]
    codomain: int

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("a monotone map needs a nonempty domain")
        if any(v < 1 or v > self.codomain for v in values):
            raise ValueError(f"values {values} outside 1..{self.codomain}")
        if any(a > b for a, b in zip(values, values[1:])):
            raise ValueError(f"values {values} are not non-decreasing")

    def __call__(self, k: int) -> int:
        return self.values[k - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def domain(self) -> int:
        return len(self.values)

    @classmethod
    def constant(cls, domain: int, value: int, codomain: int) -> "MonotoneMap":
        return cls((value,) * domain, codomain)

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"


@dataclass
class Correspondence:
    """A finite table of nonempty outcome sets.

    ``cells[r][c]`` is the tuple of outcomes at row strategy ``rows[r]`` and
    column strategy ``cols[c]``.  ``outcomes`` fixes the ground order used for
    tie-breaking and serialization.  ``m``/``n`` are set only for monotone
    bargaining tables.
    """

    rows: list
    cols: list
    cells: list
    outcomes: tuple
    m: int | None = None
    n: int | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def cell(self, r: int, c: int) -> tuple:
        return self.cells[r][c]

    def is_game_form(self) -> bool:
        return all(len(cell) == 1 for row in self.cells for cell in row)

    def __iter__(self):
        for r, row in enumerate(self.cells):
            for c, cell in enumerate(row):
                yield r, c, cell


def count_strategies(m: int, n: int) -> tuple[int, int]:
    """Return (|X|, |Y|) = (C(m+n-1, m), C(m+n-1, n))."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return math.comb(m + n - 1, m), math.comb(m + n - 1, n)


@lru_cache(maxsize=None)
def _value_tuples(domain: int, codomain: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations_with_replacement(range(1, codomain + 1), domain))


def enumerate_monotone_maps(domain_size: int, codomain_size: int) -> list[MonotoneMap]:
    """All non-decreasing maps in lexicographic order of their values."""
    if domain_size < 1 or codomain_size < 1:
        raise ValueError("sizes must be positive")
    return [MonotoneMap(v, codomain_size) for v in _value_tuples(domain_size, codomain_size)]


def _values(s) -> Sequence[int]:
    return s.values if isinstance(s, MonotoneMap) else s


def deals(x, y) -> list[Outcome]:
    """Sorted deals of the profile (x, y): pairs with x(i) = j and y(j) = i.

    Accepts MonotoneMap objects or plain value sequences.
    """
    xv, yv = _values(x), _values(y)
    out = [(i, j) for i, j in enumerate(xv, 1) if yv[j - 1] == i]
    assert out, f"no deal for x={tuple(xv)}, y={tuple(yv)}"
    return out


def lasso(x, y, start: tuple[str, int]) -> tuple[list, list]:
    """Follow the walk of Gamma(x, y) from ``start`` until a vertex repeats.

    Vertices are ``("a", i)`` or ``("b", j)``.  Returns (tail, cycle) where the
    cycle lists its vertices in walk order.
    """
    xv, yv = _values(x), _values(y)
    seen: dict = {}
    walk = []
    v = start
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        side, k = v
        v = ("b", xv[k - 1]) if side == "a" else ("a", yv[k - 1])
    first = seen[v]
    return walk[:first], walk[first:]


def build_correspondence(m: int, n: int, bound: int = DEFAULT_BUILD_BOUND) -> Correspondence:
    """Tabulate G_{m,n} over both strategy lists in lexicographic order."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m * n > bound:
        raise BoundExceededError("m*n", m * n, bound)
    xs = enumerate_monotone_maps(m, n)
    ys = enumerate_monotone_maps(n, m)
    cells = [[tuple(deals(x, y)) for y in ys] for x in xs]
    outcomes = tuple((i, j) for i in range(1, m + 1) for j in range(1, n + 1))
    return Correspondence(xs, ys, cells, outcomes, m, n)


def _check_chain(m: int, n: int, deal_set: Iterable[Outcome]) -> list[Outcome]:
    chain = sorted({(int(i), int(j)) for i, j in deal_set})
    if not chain:
        raise InvalidDealSetError("the deal set is empty")
    for i, j in chain:
        if not (1 <= i <= m and 1 <= j <= n):
            raise InvalidDealSetError(f"deal {(i, j)} outside the {m}x{n} grid")
    for (i0, j0), (i1, j1) in zip(chain, chain[1:]):
        if not (i0 < i1 and j0 < j1):
            raise InvalidDealSetError(f"deals {(i0, j0)} and {(i1, j1)} cross or share an item")
    return chain


def realize_deals(m: int, n: int, deal_set: Iterable[Outcome]) -> tuple[MonotoneMap, MonotoneMap]:
    """Build (x, y) whose deal set is exactly ``deal_set``.

    Items between two consecutive deals are sent to the next deal's partner;
    items above the last deal are sent to the last deal's partner.
    """
    chain = _check_chain(m, n, deal_set)
    x = [0] * m
    y = [0] * n
    prev_i = prev_j = 0
    for i, j in chain:
        for a in range(prev_i + 1, i + 1):
            x[a - 1] = j
        for b in range(prev_j + 1, j + 1):
            y[b - 1] = i
        prev_i, prev_j = i, j
    last_i, last_j = chain[-1]
    for a in range(last_i + 1, m + 1):
        x[a - 1] = last_j
    for b in range(last_j + 1, n + 1):
        y[b - 1] = last_i
    return MonotoneMap(tuple(x), n), MonotoneMap(tuple(y), m)


def punishing_strategy(deal: Outcome, player: str, m: int, n: int) -> MonotoneMap:
    """The constant strategy that pins the cell down to ``deal``.

    For Alice this is x = deal.j everywhere: against any y with y(j) = i the
    only deal is (i, j).  Bob's version is symmetric.
    """
    i, j = deal
    if not (1 <= i <= m and 1 <= j <= n):
        raise ValueError(f"deal {deal} outside the {m}x{n} grid")
    player = player.upper()
    if player == "A":
        return MonotoneMap.constant(m, j, n)
    if player == "B":
        return MonotoneMap.constant(n, i, m)
    raise ValueError(f"unknown player {player!r}")


def outcome_label(o: Hashable) -> str:
    """Ground label of an outcome: strings pass through, tuples become o_i_j."""
    if isinstance(o, str):
        return o
    return "o_" + "_".join(str(k) for k in o)


def parse_outcome_label(label: str) -> tuple[int, ...]:
    parts = label.split("_")
    if parts[0] != "o" or len(parts) < 3:
        raise ValueError(f"not an indexed outcome label: {label!r}")
    return tuple(int(p) for p in parts[1:])
