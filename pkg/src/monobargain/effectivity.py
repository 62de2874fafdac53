"""Effectivity: can a player force the outcome into a set W?

For monotone bargaining, Alice is effective for W iff some non-decreasing x
has (i, x(i)) in W for every i, which a single greedy sweep decides.  When
the sweep fails, the opponent has a strategy that keeps every deal out of W.

Outcome sets W are bitmasks in row-major order (bit (i-1)*n + (j-1) stands
for (i, j)) or iterables of (i, j) pairs.
"""

from __future__ import annotations

import random
from typing import Iterable

from .errors import ValidationError
from .hypergraph import Hypergraph
from .monotone import MonotoneMap, _value_tuples, count_strategies, deals

EXHAUSTIVE_VALIDATION_LIMIT = 10_000


def outcome_mask(W, m: int, n: int) -> int:
    if isinstance(W, int):
        if W < 0 or W >> (m * n):
            raise ValueError("outcome mask out of range")
        return W
    mask = 0
    for i, j in W:
        if not (1 <= i <= m and 1 <= j <= n):
            raise ValueError(f"outcome {(i, j)} outside the {m}x{n} grid")
        mask |= 1 << ((i - 1) * n + (j - 1))
    return mask


def mask_outcomes(mask: int, m: int, n: int) -> list[tuple[int, int]]:
    return [(k // n + 1, k % n + 1) for k in range(m * n) if mask >> k & 1]


def _player(player: str) -> str:
    p = player.upper()
    if p not in ("A", "B"):
        raise ValueError(f"unknown player {player!r}")
    return p


def greedy_effective(player: str, W, m: int, n: int) -> tuple[bool, MonotoneMap | None]:
    """Decide E(player, W) by the greedy sweep and return the minimal witness.

    Alice takes rows i = 1..m in turn and picks the smallest j not below the
    previous pick with (i, j) in W.  Bob does the same over columns.  The
    pointer never moves back, so one sweep costs O(m + n).
    """
    p = _player(player)
    W = outcome_mask(W, m, n)
    if p == "A":
        picks = []
        j = 1
        for i in range(1, m + 1):
            base = (i - 1) * n - 1
            while j <= n and not W >> (base + j) & 1:
                j += 1
            if j > n:
                return False, None
            picks.append(j)
        return True, MonotoneMap(tuple(picks), n)
    picks = []
    i = 1
    for j in range(1, n + 1):
        while i <= m and not W >> ((i - 1) * n + j - 1) & 1:
            i += 1
        if i > m:
            return False, None
        picks.append(i)
    return True, MonotoneMap(tuple(picks), m)


def _blocks(player: str, s: MonotoneMap, W: int, m: int, n: int, rng=None) -> bool:
    """True iff no strategy of ``player`` meets W against the opponent's s."""
    count = count_strategies(m, n)[0 if player == "A" else 1]
    dom, cod = (m, n) if player == "A" else (n, m)
    if count <= EXHAUSTIVE_VALIDATION_LIMIT:
        strategies = _value_tuples(dom, cod)
    else:
        rng = rng or random.Random(0)
        strategies = (random_monotone_values(dom, cod, rng) for _ in range(EXHAUSTIVE_VALIDATION_LIMIT))
    for t in strategies:
        cell = deals(t, s) if player == "A" else [(i, j) for j, i in deals(t, s)]
        if any(W >> ((i - 1) * n + j - 1) & 1 for i, j in cell):
            return False
    return True


def random_monotone_values(domain: int, codomain: int, rng: random.Random) -> tuple[int, ...]:
    """Uniform non-decreasing map, drawn as a multiset by stars and bars."""
    bars = sorted(rng.sample(range(domain + codomain - 1), domain))
    return tuple(b - k + 1 for k, b in enumerate(bars))


def blocking_strategy(player: str, W, m: int, n: int) -> MonotoneMap:
    """An opponent strategy keeping every deal outside W, given E(player, W) = 0.

    If the greedy sweep for Alice stalls at row k+1 and that row holds no
    W-outcome, the constant map onto a_{k+1} blocks.  Otherwise each b_j is
    sent, in increasing j, to the smallest a not below the previous choice
    with (a, b_j) outside W.  The result is checked against the opponent's
    strategies before it is returned.
    """
    p = _player(player)
    W = outcome_mask(W, m, n)
    ok, _ = greedy_effective(p, W, m, n)
    if ok:
        raise ValueError(f"player {p} is effective for W; nothing to block")
    full = (1 << (m * n)) - 1
    if p == "A":
        stall = _stall_row(W, m, n)
        row_bits = (W >> ((stall - 1) * n)) & ((1 << n) - 1)
        if row_bits == 0:
            s = MonotoneMap.constant(n, stall, m)
        else:
            ok, s = greedy_effective("B", full & ~W, m, n)
    else:
        stall = _stall_col(W, m, n)
        if not any(W >> ((i - 1) * n + stall - 1) & 1 for i in range(1, m + 1)):
            s = MonotoneMap.constant(m, stall, n)
        else:
            ok, s = greedy_effective("A", full & ~W, m, n)
    if s is None or not _blocks(p, s, W, m, n):
        raise ValidationError(f"blocking strategy for player {p} failed validation")
    return s


def _stall_row(W: int, m: int, n: int) -> int:
    j = 1
    for i in range(1, m + 1):
        base = (i - 1) * n - 1
        while j <= n and not W >> (base + j) & 1:
            j += 1
        if j > n:
            return i
    raise AssertionError("greedy did not stall")  # pragma: no cover


def _stall_col(W: int, m: int, n: int) -> int:
    i = 1
    for j in range(1, n + 1):
        while i <= m and not W >> ((i - 1) * n + j - 1) & 1:
            i += 1
        if i > m:
            return j
    raise AssertionError("greedy did not stall")  # pragma: no cover


def hypergraph_effective(H: Hypergraph, W) -> tuple[bool, int | None]:
    """E = 1 iff some edge lies inside W; the witness is the first such edge index."""
    mask = W if isinstance(W, int) else H.mask_of(W)
    for k, e in enumerate(H.edges):
        if e & mask == e:
            return True, k
    return False, None


# Oracles and incremental trackers used by the equilibrium search.  A tracker
# holds a growing outcome set S and answers E(S), E(S + {o}) and add(...).


class EffectivityOracle:
    """Answers ``effective(W) -> (bit, witness)`` for one player."""

    def effective(self, W) -> tuple[bool, object]:
        raise NotImplementedError

    def tracker(self) -> "SetTracker":
        return SetTracker(self)


class SetTracker:
    """Fallback tracker that re-asks the oracle on every query."""

    def __init__(self, oracle: EffectivityOracle):
        self.oracle = oracle
        self.members: set = set()

    def add(self, outcomes: Iterable) -> None:
        self.members.update(outcomes)

    def probe(self, o) -> tuple[bool, object]:
        return self.oracle.effective(self.members | {o})

    def effective(self) -> tuple[bool, object]:
        return self.oracle.effective(set(self.members))


class HypergraphOracle(EffectivityOracle):
    """Effectivity read off a row or column hypergraph; witnesses are edge indices."""

    def __init__(self, H: Hypergraph):
        self.H = H
        self._index = H.index()

    def effective(self, W):
        return hypergraph_effective(self.H, self._mask(W))

    def _mask(self, W) -> int:
        if isinstance(W, int):
            return W
        mask = 0
        for o in W:
            mask |= 1 << self._index[o]
        return mask

    def tracker(self):
        return _HypergraphTracker(self)


class _HypergraphTracker:
    def __init__(self, oracle: HypergraphOracle):
        self.oracle = oracle
        self.mask = 0

    def add(self, outcomes):
        self.mask |= self.oracle._mask(outcomes)

    def probe(self, o):
        return hypergraph_effective(self.oracle.H, self.mask | self.oracle._mask([o]))

    def effective(self):
        return hypergraph_effective(self.oracle.H, self.mask)


class GreedyOracle(EffectivityOracle):
    """Effectivity in G_{m,n} without tabulating strategies."""

    def __init__(self, player: str, m: int, n: int):
        self.player = _player(player)
        self.m = m
        self.n = n

    def effective(self, W):
        return greedy_effective(self.player, W, self.m, self.n)

    def tracker(self):
        return StaircaseTracker(self.player, self.m, self.n)


class StaircaseTracker:
    """Incremental greedy for a growing set S.

    Works on "lines" (rows for Alice, columns for Bob).  ``fwd[k]`` is the
    greedy pick on line k given the picks before it; ``bwd[k]`` is the largest
    pick on line k from which lines k+1.. can still be completed.  Both move
    monotonically as S grows, so all updates together cost O(m n).
    """

    def __init__(self, player: str, m: int, n: int):
        self.player = _player(player)
        self.m, self.n = m, n
        if self.player == "A":
            self.lines, self.width = m, n
        else:
            self.lines, self.width = n, m
        self.masks = [0] * self.lines
        self.fwd: list[int | None] = [None] * self.lines
        self.bwd: list[int | None] = [None] * self.lines

    def _coords(self, o) -> tuple[int, int]:
        i, j = o
        return (i - 1, j - 1) if self.player == "A" else (j - 1, i - 1)

    @staticmethod
    def _succ(mask: int, r: int) -> int | None:
        rest = mask >> r
        if not rest:
            return None
        return r + (rest & -rest).bit_length() - 1

    @staticmethod
    def _pred(mask: int, r: int) -> int | None:
        low = mask & ((2 << r) - 1)
        return low.bit_length() - 1 if low else None

    def add(self, outcomes) -> None:
        touched = set()
        for o in outcomes:
            k, v = self._coords(o)
            self.masks[k] |= 1 << v
            touched.add(k)
        for k in sorted(touched):
            self._push_forward(k)
        for k in sorted(touched, reverse=True):
            self._push_backward(k)

    def _push_forward(self, k: int) -> None:
        while k < self.lines:
            if k == 0:
                prev = 0
            else:
                prev = self.fwd[k - 1]
                if prev is None:
                    return
            new = self._succ(self.masks[k], prev)
            if new == self.fwd[k]:
                return
            self.fwd[k] = new
            if new is None:
                return
            k += 1

    def _push_backward(self, k: int) -> None:
        while k >= 0:
            if k == self.lines - 1:
                cap = self.width - 1
            else:
                cap = self.bwd[k + 1]
                if cap is None:
                    return
            new = self._pred(self.masks[k], cap)
            if new == self.bwd[k]:
                return
            self.bwd[k] = new
            if new is None:
                return
            k -= 1

    def _witness(self, picks: list[int]) -> MonotoneMap:
        return MonotoneMap(tuple(v + 1 for v in picks), self.width)

    def effective(self):
        if self.fwd[-1] is None:
            return False, None
        return True, self._witness(self.fwd)

    def probe(self, o):
        if self.fwd[-1] is not None:
            return self.effective()
        k, v = self._coords(o)
        if k > 0 and (self.fwd[k - 1] is None or self.fwd[k - 1] > v):
            return False, None
        if k < self.lines - 1 and (self.bwd[k + 1] is None or v > self.bwd[k + 1]):
            return False, None
        picks = list(self.fwd[:k]) + [v]
        prev = v
        for line in range(k + 1, self.lines):
            prev = self._succ(self.masks[line], prev)
            picks.append(prev)
        return True, self._witness(picks)
