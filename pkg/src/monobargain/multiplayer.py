"""Three-player monotone bargaining: Alice maps A -> B, Bob B -> C, Claire C -> A.

An outcome is a triple (i, j, l) of item indices; it is a deal of (x, y, z)
when x(i) = j, y(j) = l and z(l) = i.  Every profile has a deal, but already
G_{2,2,2} is neither tight nor Nash-solvable.  This module builds the table
and certifies both failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

from .errors import BoundExceededError, RealizationError
from .hypergraph import DualityVerdict, Hypergraph, check_dual, sperner_reduce
from .monotone import _values, enumerate_monotone_maps, outcome_label

BUILD3_BOUND = 64
PLAYERS = ("A", "B", "C")


def deals3(x, y, z) -> list[tuple[int, int, int]]:
    """Sorted deals (i, j, l) with x(i) = j, y(j) = l, z(l) = i."""
    xv, yv, zv = _values(x), _values(y), _values(z)
    out = []
    for i, j in enumerate(xv, 1):
        l = yv[j - 1]
        if zv[l - 1] == i:
            out.append((i, j, l))
    assert out, f"no deal for x={tuple(xv)}, y={tuple(yv)}, z={tuple(zv)}"
    return out


def lasso3(x, y, z, start: tuple[str, int]) -> tuple[list, list]:
    """Walk a -> b -> c -> a in Gamma(x, y, z) from ``start`` until a vertex repeats."""
    maps = {"a": ("b", _values(x)), "b": ("c", _values(y)), "c": ("a", _values(z))}
    seen: dict = {}
    walk = []
    v = start
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        side, k = v
        nxt, values = maps[side]
        v = (nxt, values[k - 1])
    first = seen[v]
    return walk[:first], walk[first:]


@dataclass
class Correspondence3:
    """``cells[a][b][c]`` holds the deals of (xs[a], ys[b], zs[c])."""

    dims: tuple[int, int, int]
    xs: list
    ys: list
    zs: list
    cells: list

    @property
    def outcomes(self) -> tuple:
        m, n, k = self.dims
        return tuple(product(range(1, m + 1), range(1, n + 1), range(1, k + 1)))

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.xs), len(self.ys), len(self.zs)

    def profiles(self):
        return product(*(range(s) for s in self.shape))

    def cell(self, profile) -> tuple:
        a, b, c = profile
        return self.cells[a][b][c]

    def multi_cells(self) -> list[tuple[int, int, int]]:
        return [p for p in self.profiles() if len(self.cell(p)) > 1]

    def count_game_forms(self) -> int:
        return math.prod(len(self.cell(p)) for p in self.profiles())

    def game_forms(self):
        """Every selection, as dicts from multi-deal profiles to the chosen deal."""
        multi = self.multi_cells()
        for pick in product(*(self.cell(p) for p in multi)):
            yield dict(zip(multi, pick))


def build3(m: int, n: int, k: int, bound: int = BUILD3_BOUND) -> Correspondence3:
    if min(m, n, k) < 1:
        raise ValueError("m, n and k must be positive")
    if m * n * k > bound:
        raise BoundExceededError("m*n*k", m * n * k, bound)
    xs = enumerate_monotone_maps(m, n)
    ys = enumerate_monotone_maps(n, k)
    zs = enumerate_monotone_maps(k, m)
    cells = [[[tuple(deals3(x, y, z)) for z in zs] for y in ys] for x in xs]
    return Correspondence3((m, n, k), xs, ys, zs, cells)


def coalition_hypergraphs(G3: Correspondence3) -> dict[str, Hypergraph]:
    """Edges of H_S: for each strategy of coalition S, the union of its cells.

    Keys are "A", "B", "C", "AB", "AC", "BC".  Ground labels are o_i_j_l.
    No Sperner reduction is applied.
    """
    ground = tuple(outcome_label(o) for o in G3.outcomes)
    index = {o: k for k, o in enumerate(G3.outcomes)}
    out = {}
    for coalition in ("A", "B", "C", "AB", "AC", "BC"):
        axes = [PLAYERS.index(p) for p in coalition]
        masks: dict = {}
        for profile in G3.profiles():
            key = tuple(profile[a] for a in axes)
            mask = masks.get(key, 0)
            for o in G3.cell(profile):
                mask |= 1 << index[o]
            masks[key] = mask
        out[coalition] = Hypergraph(ground, tuple(masks[key] for key in sorted(masks)))
    return out


def _triple(label: str) -> tuple[int, int, int]:
    return tuple(int(ch) for ch in label)


# The hypergraph lists as printed for G_{2,2,2}, digits in printed order.
PRINTED_H_A = (("111", "112", "121", "122"), ("111", "121", "212", "222"), ("211", "212", "221", "222"))
PRINTED_H_BC = (("111", "211"), ("112", "212"), ("111", "221"), ("111", "222"),
                ("112", "222"), ("121", "221"), ("121", "222"))
PRINTED_WITNESSES = (("121", "211"), ("121", "212"))


def printed_to_natural(label: str, perm: tuple[int, int, int]) -> tuple[int, int, int]:
    """Printed digit k is natural coordinate perm[k]."""
    digits = _triple(label)
    out = [0, 0, 0]
    for k, axis in enumerate(perm):
        out[axis] = digits[k]
    return tuple(out)


def infer_label_convention(G3: Correspondence3 | None = None) -> dict:
    """Pick the coordinate order of the printed lists that matches most edges.

    Computed families are compared as sets of outcome sets: H_A as built and
    H_BC after Sperner reduction.  Ties go to the earlier permutation.
    """
    G3 = G3 or build3(2, 2, 2)
    hs = coalition_hypergraphs(G3)
    computed_a = {frozenset(e) for e in hs["A"].edge_sets()}
    computed_bc = {frozenset(e) for e in sperner_reduce(hs["BC"]).edge_sets()}
    best = None
    for perm in permutations(range(3)):
        def conv(edge):
            return frozenset(outcome_label(printed_to_natural(lbl, perm)) for lbl in edge)
        a = sum(conv(e) in computed_a for e in PRINTED_H_A)
        bc = sum(conv(e) in computed_bc for e in PRINTED_H_BC)
        if best is None or a + bc > best["matched_a"] + best["matched_bc"]:
            best = {"perm": perm, "matched_a": a, "matched_bc": bc}
    best["printed_a"] = len(PRINTED_H_A)
    best["printed_bc"] = len(PRINTED_H_BC)
    return best


def certify_not_tight(G3: Correspondence3 | None = None) -> DualityVerdict:
    """check_dual(H_A, H_BC) on G_{2,2,2}; the witness is a 2-element transversal of H_A."""
    G3 = G3 or build3(2, 2, 2)
    hs = coalition_hypergraphs(G3)
    return check_dual(hs["A"], hs["BC"])


# Improving player tagged on each profile of the counterexample table, indexed
# [z][x][y] with strategies in lexicographic order (1,1), (1,2), (2,2).
PRINTED_TAGS = (
    ("BBA", "BBA", "CBB"),
    ("AAC", "AAA", "CCA"),
    ("BBC", "BCA", "BCC"),
)

# The tagged table resolves the only two-deal cell to this outcome.
TAGGED_SELECTION = (1, 1, 1)

# Strict preferences stated for the counterexample, as (better, worse) pairs.
STATED_INEQUALITIES = {
    "A": [("212", "222"), ("222", "111"), ("121", "111"), ("122", "112")],
    "B": [("112", "111"), ("121", "122"), ("222", "221"), ("212", "211")],
    "C": [("111", "222"), ("122", "122"), ("112", "212"), ("221", "121")],
}

# Output of realize_utilities(): the first strict ranking (values 0..7, in
# lexicographic permutation order over outcomes 111, 112, ..., 222) meeting
# the stated inequalities and every annotated improvement of the tagged form.
REALIZED_UTILITIES = {
    "A": (0, 1, 2, 3, 4, 6, 7, 5),
    "B": (0, 1, 3, 2, 4, 5, 6, 7),
    "C": (1, 3, 4, 5, 6, 2, 7, 0),
}


def tagged_form(G3: Correspondence3) -> dict:
    """Selection for the tagged game form: TAGGED_SELECTION wherever it is a deal."""
    return {p: (TAGGED_SELECTION if TAGGED_SELECTION in G3.cell(p) else G3.cell(p)[0])
            for p in G3.multi_cells()}


def _outcome(G3: Correspondence3, selection: dict, profile) -> tuple:
    cell = G3.cell(profile)
    return cell[0] if len(cell) == 1 else selection[tuple(profile)]


def improving_players(G3: Correspondence3, selection: dict, u: dict, profile) -> list[str]:
    """Players with a strictly better unilateral deviation at ``profile``."""
    here = _outcome(G3, selection, profile)
    out = []
    for axis, player in enumerate(PLAYERS):
        base = u[player][here]
        for s in range(G3.shape[axis]):
            if s == profile[axis]:
                continue
            alt = list(profile)
            alt[axis] = s
            if u[player][_outcome(G3, selection, alt)] > base:
                out.append(player)
                break
    return out


def annotation(profile) -> str:
    a, b, c = profile
    return PRINTED_TAGS[c][a][b]


def utility_dict(G3: Correspondence3, values: dict) -> dict:
    outcomes = G3.outcomes
    return {p: dict(zip(outcomes, values[p])) for p in PLAYERS}


def drop_self_loops(inequalities: dict) -> tuple[dict, list]:
    kept, dropped = {}, []
    for player, pairs in inequalities.items():
        kept[player] = []
        for better, worse in pairs:
            if better == worse:
                dropped.append({"player": player, "better": better, "worse": worse})
            else:
                kept[player].append((better, worse))
    return kept, dropped


def realize_utilities(G3: Correspondence3 | None = None) -> tuple[dict, list]:
    """Search strict rankings that realize the stated inequalities and the printed tags.

    Players are independent: player P's ranking must satisfy P's inequalities
    and give P a strict improvement at every profile tagged P in the tagged
    form.  Returns (values per player over G3.outcomes, dropped inequalities).
    Raises RealizationError if some player has no ranking.
    """
    G3 = G3 or build3(2, 2, 2)
    if G3.dims != (2, 2, 2):
        raise ValueError("the stated inequalities refer to G_{2,2,2}")
    inequalities, dropped = drop_self_loops(STATED_INEQUALITIES)
    selection = tagged_form(G3)
    outcomes = G3.outcomes
    index = {o: k for k, o in enumerate(outcomes)}
    found = {}
    for axis, player in enumerate(PLAYERS):
        pairs = [(index[_triple(b)], index[_triple(w)]) for b, w in inequalities[player]]
        tagged = [p for p in G3.profiles() if annotation(p) == player]
        # for each tagged profile: the outcome there and the outcomes reachable by deviating
        checks = []
        for p in tagged:
            alts = []
            for s in range(G3.shape[axis]):
                if s != p[axis]:
                    q = list(p)
                    q[axis] = s
                    alts.append(index[_outcome(G3, selection, q)])
            checks.append((index[_outcome(G3, selection, p)], alts))
        for values in permutations(range(len(outcomes))):
            if any(values[b] <= values[w] for b, w in pairs):
                continue
            if all(any(values[a] > values[h] for a in alts) for h, alts in checks):
                found[player] = values
                break
        else:
            raise RealizationError(f"no ranking for player {player} realizes the tags")
    return found, dropped


def count_equilibria(G3: Correspondence3, selection: dict, u: dict) -> int:
    return sum(1 for p in G3.profiles() if not improving_players(G3, selection, u, p))


def certify_no_ne(G3: Correspondence3 | None = None, values: dict | None = None) -> dict:
    """Exhaustively confirm that no game form of G_{2,2,2} has a pure NE.

    ``values`` defaults to the frozen REALIZED_UTILITIES.  The report lists,
    per game form, the NE count and for every profile its improving players
    and a tag (the printed tag when it improves, else the first
    improving one).
    """
    G3 = G3 or build3(2, 2, 2)
    values = values or REALIZED_UTILITIES
    u = utility_dict(G3, values)
    _, dropped = drop_self_loops(STATED_INEQUALITIES)
    tagged = tagged_form(G3)
    forms = []
    for selection in G3.game_forms():
        profiles = []
        for p in G3.profiles():
            players = improving_players(G3, selection, u, p)
            mark = annotation(p) if G3.dims == (2, 2, 2) else None
            tag = mark if mark in players else (players[0] if players else None)
            profiles.append({
                "x": str(G3.xs[p[0]]), "y": str(G3.ys[p[1]]), "z": str(G3.zs[p[2]]),
                "outcome": list(_outcome(G3, selection, p)),
                "improving": players, "tag": tag, "printed_tag": mark,
            })
        forms.append({
            "selection": [{"profile": [str(G3.xs[a]), str(G3.ys[b]), str(G3.zs[c])], "outcome": list(o)}
                          for (a, b, c), o in selection.items()],
            "is_tagged_form": selection == tagged,
            "ne_found": sum(1 for r in profiles if not r["improving"]),
            "profiles": profiles,
        })
    tags_ok = all(r["printed_tag"] in r["improving"] for f in forms if f["is_tagged_form"] for r in f["profiles"])
    return {
        "utilities": {p: {"".join(map(str, o)): u[p][o] for o in G3.outcomes} for p in PLAYERS},
        "dropped_inequalities": dropped,
        "total_forms": len(forms),
        "ne_found": sum(f["ne_found"] for f in forms),
        "all_tagged": all(r["tag"] is not None for f in forms for r in f["profiles"]),
        "consistent_with_tags": tags_ok,
        "forms": forms,
    }


def stated_inequalities_hold(values: dict, outcomes) -> bool:
    inequalities, _ = drop_self_loops(STATED_INEQUALITIES)
    index = {o: k for k, o in enumerate(outcomes)}
    return all(values[p][index[_triple(b)]] > values[p][index[_triple(w)]]
               for p, pairs in inequalities.items() for b, w in pairs)


def witness_pairs_natural(perm: tuple[int, int, int]) -> list[frozenset[str]]:
    return [frozenset(outcome_label(printed_to_natural(lbl, perm)) for lbl in pair) for pair in PRINTED_WITNESSES]

