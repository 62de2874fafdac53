"""Simple Nash equilibria of tight game correspondences.

The search keeps a partition O = W + W_A + W_B.  Alice's worst remaining
outcome o* goes to W_A unless that would let Bob force W_A + {o*}; then the
outcomes of W that Bob likes no more than o* go to W_B unless Alice could
force W_B plus those.  When both moves are blocked, the two forcing
strategies meet in the single outcome o* and form an equilibrium.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Mapping, Sequence

from .effectivity import EffectivityOracle, GreedyOracle, HypergraphOracle
from .errors import AmbiguousCellError, BoundExceededError, NonTightError
from .hypergraph import Hypergraph, align, row_column_hypergraphs
from .monotone import Correspondence, deals, outcome_label

BRUTE_FORCE_LIMIT = 10**6
FORM_LIMIT = 10**6
PM1_LIMIT = 20


@dataclass(frozen=True)
class UtilityProfile:
    """Integer payoffs of both players, keyed by outcome.

    ``outcomes`` is the ground order; ties are broken towards the earlier
    outcome in it.
    """

    outcomes: tuple
    uA: Mapping
    uB: Mapping

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        for name in ("uA", "uB"):
            table = getattr(self, name)
            missing = [o for o in self.outcomes if o not in table]
            if missing:
                raise ValueError(f"{name} has no value for {missing[:3]}")
            if any(not isinstance(table[o], int) or isinstance(table[o], bool) for o in self.outcomes):
                raise ValueError(f"{name} must be integer-valued")

    @property
    def zero_sum(self) -> bool:
        return all(self.uA[o] + self.uB[o] == 0 for o in self.outcomes)

    @classmethod
    def from_grid(cls, uA: Sequence[Sequence[int]], uB: Sequence[Sequence[int]]) -> "UtilityProfile":
        """Row-major m x n tables; entry [i-1][j-1] is the payoff of (i, j)."""
        m, n = len(uA), len(uA[0])
        if len(uB) != m or any(len(r) != n for r in list(uA) + list(uB)):
            raise ValueError("uA and uB must both be m x n")
        outcomes = tuple((i, j) for i in range(1, m + 1) for j in range(1, n + 1))
        return cls(outcomes,
                   {(i, j): int(uA[i - 1][j - 1]) for i, j in outcomes},
                   {(i, j): int(uB[i - 1][j - 1]) for i, j in outcomes})

    @classmethod
    def constant(cls, outcomes, value: int = 0) -> "UtilityProfile":
        outcomes = tuple(outcomes)
        return cls(outcomes, {o: value for o in outcomes}, {o: value for o in outcomes})


@dataclass
class SimpleEquilibrium:
    x_star: object
    y_star: object
    o_star: object
    trace: list = field(default_factory=list)
    w_a: frozenset = frozenset()
    w_b: frozenset = frozenset()
    w_b_star: frozenset = frozenset()

    @property
    def iterations(self) -> int:
        return len(self.trace) + 1


def solve_tight(oracle_a: EffectivityOracle, oracle_b: EffectivityOracle,
                cell: Callable, u: UtilityProfile) -> SimpleEquilibrium:
    """Find a simple NE of a tight correspondence described by its oracles.

    ``oracle_a`` decides Alice's effectivity, ``oracle_b`` Bob's;
    ``cell(x, y)`` returns the outcomes of a profile.  Raises NonTightError if
    the process exhausts W or the final cell is not {o*}.
    """
    outcomes = u.outcomes
    P = len(outcomes)
    ua = [u.uA[o] for o in outcomes]
    ub = [u.uB[o] for o in outcomes]
    by_a = sorted(range(P), key=lambda k: (ua[k], k))
    by_b = sorted(range(P), key=lambda k: (ub[k], k))
    alive = bytearray(b"\x01") * P
    remaining = P
    holds_wb = oracle_a.tracker()   # Alice's effectivity on W_B
    holds_wa = oracle_b.tracker()   # Bob's effectivity on W_A
    w_a: list[int] = []
    w_b: list[int] = []
    trace = []
    pa = pb = 0
    while remaining:
        while not alive[by_a[pa]]:
            pa += 1
        star = by_a[pa]
        o_star = outcomes[star]
        bob_forces, y_star = holds_wa.probe(o_star)
        if not bob_forces:
            alive[star] = 0
            remaining -= 1
            holds_wa.add([o_star])
            w_a.append(star)
            trace.append({"to": "A", "outcomes": [o_star]})
            continue
        group = []
        q = pb
        while q < P and ub[by_b[q]] <= ub[star]:
            if alive[by_b[q]]:
                group.append(by_b[q])
            q += 1
        holds_wb.add([outcomes[k] for k in group])
        alice_forces, x_star = holds_wb.effective()
        if alice_forces:
            got = set(cell(x_star, y_star))
            if got != {o_star}:
                raise NonTightError(f"cell at the final profile is {sorted(got, key=str)}, expected {{{o_star}}}")
            return SimpleEquilibrium(
                x_star, y_star, o_star, trace,
                frozenset(outcomes[k] for k in w_a),
                frozenset(outcomes[k] for k in w_b),
                frozenset(outcomes[k] for k in group),
            )
        for k in group:
            alive[k] = 0
        remaining -= len(group)
        w_b.extend(group)
        pb = q
        trace.append({"to": "B", "outcomes": [outcomes[k] for k in group]})
    raise NonTightError("W was exhausted; the correspondence is not tight")


def solve_bargaining(m: int, n: int, u: UtilityProfile) -> SimpleEquilibrium:
    """Simple NE of G_{m,n} using greedy effectivity; no table is built."""
    return solve_tight(GreedyOracle("A", m, n), GreedyOracle("B", m, n), deals, u)


def solve_correspondence(G: Correspondence, u: UtilityProfile) -> SimpleEquilibrium:
    """Simple NE of a tabulated correspondence; strategies are row/column indices.

    ``u`` may be keyed by the table's outcomes or by their ground labels.
    """
    C, D = row_column_hypergraphs(G)
    u = _relabel(u)
    return solve_tight(HypergraphOracle(C), HypergraphOracle(D),
                       lambda r, c: [outcome_label(o) for o in G.cells[r][c]], u)


def solve_hypergraph_pair(C: Hypergraph, D: Hypergraph, u: UtilityProfile) -> SimpleEquilibrium:
    C, D = align(C, D)
    return solve_tight(HypergraphOracle(C), HypergraphOracle(D),
                       lambda r, c: C.labels_of(C.edges[r] & D.edges[c]), _relabel(u))


def _relabel(u: UtilityProfile) -> UtilityProfile:
    if all(isinstance(o, str) for o in u.outcomes):
        return u
    outcomes = tuple(outcome_label(o) for o in u.outcomes)
    return UtilityProfile(outcomes,
                          {outcome_label(o): v for o, v in u.uA.items()},
                          {outcome_label(o): v for o, v in u.uB.items()})


def _lookup(u: UtilityProfile, table, o):
    return table[o] if o in table else table[outcome_label(o)]


def _selected(game: Correspondence, r: int, c: int, selection) -> object:
    if selection is not None:
        if callable(selection):
            return selection(r, c)
        return selection[r, c]
    cell = game.cells[r][c]
    if len(cell) != 1:
        raise AmbiguousCellError(f"cell ({r}, {c}) holds {len(cell)} outcomes and no selection was given")
    return cell[0]


def verify_equilibrium(game: Correspondence, u: UtilityProfile, profile: tuple[int, int],
                       selection=None) -> bool:
    """Exhaustive deviation check of the profile (row index, column index).

    ``selection`` maps (r, c) to one outcome of the cell (a game form g in G);
    without it every consulted cell must be a singleton.
    """
    r0, c0 = profile
    here = _selected(game, r0, c0, selection)
    a_here = _lookup(u, u.uA, here)
    b_here = _lookup(u, u.uB, here)
    nrows, ncols = game.shape
    for r in range(nrows):
        if _lookup(u, u.uA, _selected(game, r, c0, selection)) > a_here:
            return False
    for c in range(ncols):
        if _lookup(u, u.uB, _selected(game, r0, c, selection)) > b_here:
            return False
    return True


def equilibrium_in_all_forms(game: Correspondence, u: UtilityProfile, profile: tuple[int, int]) -> bool:
    """Is the profile a NE of every game form g in G?

    Only the cells in the profile's row and column matter, and each of them
    can be chosen adversarially on its own, so it suffices to compare every
    outcome of the profile's cell with the best outcome of every other cell
    on the cross.
    """
    r0, c0 = profile
    nrows, ncols = game.shape
    best_a = max(_lookup(u, u.uA, o) for r in range(nrows) if r != r0 for o in game.cells[r][c0]) \
        if nrows > 1 else None
    best_b = max(_lookup(u, u.uB, o) for c in range(ncols) if c != c0 for o in game.cells[r0][c]) \
        if ncols > 1 else None
    for o in game.cells[r0][c0]:
        if best_a is not None and best_a > _lookup(u, u.uA, o):
            return False
        if best_b is not None and best_b > _lookup(u, u.uB, o):
            return False
    return True


def find_profile(G: Correspondence, x, y) -> tuple[int, int]:
    return G.rows.index(x), G.cols.index(y)


def brute_force_equilibria(g: Correspondence, u: UtilityProfile, selection=None) -> list[tuple[int, int]]:
    """All pure NE of a game form, by best-response tables."""
    nrows, ncols = g.shape
    if nrows * ncols > BRUTE_FORCE_LIMIT:
        raise BoundExceededError("|X|*|Y|", nrows * ncols, BRUTE_FORCE_LIMIT)
    a = [[_lookup(u, u.uA, _selected(g, r, c, selection)) for c in range(ncols)] for r in range(nrows)]
    b = [[_lookup(u, u.uB, _selected(g, r, c, selection)) for c in range(ncols)] for r in range(nrows)]
    col_best = [max(a[r][c] for r in range(nrows)) for c in range(ncols)]
    row_best = [max(b[r]) for r in range(nrows)]
    return [(r, c) for r in range(nrows) for c in range(ncols)
            if a[r][c] == col_best[c] and b[r][c] == row_best[r]]


def count_game_forms(G: Correspondence) -> int:
    return math.prod(len(cell) for _, _, cell in G)


def enumerate_game_forms(G: Correspondence) -> Iterator[Correspondence]:
    """Every selection g in G, varying the last multi-outcome cell fastest."""
    total = count_game_forms(G)
    if total > FORM_LIMIT:
        raise BoundExceededError("number of game forms", total, FORM_LIMIT)
    positions = [(r, c) for r, c, cell in G if len(cell) > 1]
    for pick in product(*(G.cells[r][c] for r, c in positions)):
        cells = [list(row) for row in G.cells]
        for (r, c), o in zip(positions, pick):
            cells[r][c] = (o,)
        for r, c, cell in G:
            if len(cell) == 1:
                cells[r][c] = cell
        yield Correspondence(G.rows, G.cols, cells, G.outcomes, G.m, G.n)


def has_saddle_point(g: Correspondence, value: Mapping) -> bool:
    """Zero-sum game form with Alice's payoff ``value``: is there a saddle point?"""
    nrows, ncols = g.shape
    a = [[value[g.cells[r][c][0]] for c in range(ncols)] for r in range(nrows)]
    col_max = [max(a[r][c] for r in range(nrows)) for c in range(ncols)]
    return any(a[r][c] == col_max[c] and a[r][c] == min(a[r]) for r in range(nrows) for c in range(ncols))


def check_pm1_solvability(g: Correspondence) -> tuple[bool, dict | None]:
    """Try every +-1 zero-sum payoff; return the first one without a saddle point."""
    if not g.is_game_form():
        raise AmbiguousCellError("pm1 solvability needs a game form (singleton cells)")
    if len(g.outcomes) > PM1_LIMIT:
        raise BoundExceededError("|O|", len(g.outcomes), PM1_LIMIT)
    for signs in product((1, -1), repeat=len(g.outcomes)):
        value = dict(zip(g.outcomes, signs))
        if not has_saddle_point(g, value):
            return False, value
    return True, None


def certify_bargaining_equilibrium(m: int, n: int, u: UtilityProfile, x, y) -> bool:
    """Polynomial NE check for G_{m,n} valid for every game form.

    Against y, Alice can reach exactly the outcomes (y(j), j); against x, Bob
    reaches exactly (i, x(i)).  The profile is a NE of every g in G iff its
    cell is a single deal that beats all of those for the deviating player.
    """
    cell = deals(x, y)
    if len(cell) != 1:
        return False
    o = cell[0]
    if any(u.uA[(y(j), j)] > u.uA[o] for j in range(1, n + 1)):
        return False
    return not any(u.uB[(i, x(i))] > u.uB[o] for i in range(1, m + 1))
