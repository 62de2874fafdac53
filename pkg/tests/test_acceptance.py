"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line; the lines are also collected into the
"acceptance criteria" section of the pytest summary.  Time limits are pinned
in each ``criterion`` call.  Random inputs are seed-fixed.
"""

import random
from itertools import product

from acceptance_log import criterion
from monobargain.effectivity import blocking_strategy, greedy_effective
from monobargain.hypergraph import (Hypergraph, check_dual, check_self_dual, dualize, gen_fano, gen_symmetric,
                                    gen_wheel, induced_correspondence, merge_outcomes, row_column_hypergraphs,
                                    seymour_join, sperner_reduce)
from monobargain.jordan import corner_map, jordan_correspondence
from monobargain.monotone import (Correspondence, build_correspondence, count_strategies, deals,
                                  enumerate_monotone_maps)
from monobargain.multiplayer import build3, certify_no_ne, certify_not_tight, coalition_hypergraphs
from monobargain.solver import (UtilityProfile, brute_force_equilibria, check_pm1_solvability,
                                enumerate_game_forms, equilibrium_in_all_forms, find_profile, solve_bargaining)
from printed_tables import (CORNER_ROWS, FANO_MISPRINTS, FANO_ROWS, G22_MISPRINTS, G22_ROWS, G32_MISPRINTS,
                            G32_ROWS, G33_MISPRINTS, G33_ROWS, SYMMETRIC32_MISPRINTS, SYMMETRIC32_ROWS,
                            WHEEL3_MISPRINTS, WHEEL3_ROWS, corrected, deal_cell, digits_cell, label_cell)

SEED = 20240601
PENNIES = Correspondence(["x1", "x2"], ["y1", "y2"], [[("o1",), ("o2",)], [("o2",), ("o1",)]], ("o1", "o2"))


def sorted_cells(G):
    return [[tuple(sorted(c)) for c in row] for row in G.cells]


def grid_utility(m, n, rng, high=9):
    return UtilityProfile.from_grid([[rng.randint(0, high) for _ in range(n)] for _ in range(m)],
                                    [[rng.randint(0, high) for _ in range(n)] for _ in range(m)])


def random_hypergraph(rng, max_p):
    p = rng.randint(1, max_p)
    edges = [rng.randint(1, (1 << p) - 1) for _ in range(rng.randint(1, 8))]
    return Hypergraph(tuple(f"v{k}" for k in range(p)), tuple(edges))


def deviation_scan(m, n, u, x, y, o):
    """Every unilateral deviation, run through deals() directly: no deal may beat o for the deviator."""
    for x2 in enumerate_monotone_maps(m, n):
        if any(u.uA[d] > u.uA[o] for d in deals(x2, y)):
            return False
    for y2 in enumerate_monotone_maps(n, m):
        if any(u.uB[d] > u.uB[o] for d in deals(x, y2)):
            return False
    return True


def cross_forms_scan(G, u, r0, c0):
    """Every selection of the cells on the profile's row and column, literally enumerated."""
    cross = [(r, c0) for r in range(G.shape[0])] + [(r0, c) for c in range(G.shape[1]) if c != c0]
    for pick in product(*(G.cells[r][c] for r, c in cross)):
        sel = dict(zip(cross, pick))
        here = sel[r0, c0]
        if any(u.uA[sel[r, c0]] > u.uA[here] for r in range(G.shape[0])):
            return False
        if any(u.uB[sel[r0, c]] > u.uB[here] for c in range(G.shape[1])):
            return False
    return True


def test_criterion_1_strategy_counts():
    with criterion(1, "strategy counts", 0.001):
        got = [count_strategies(2, 2), count_strategies(3, 2), count_strategies(3, 3)]
    assert got == [(3, 3), (4, 6), (10, 10)]


def test_criterion_2_table_reproduction():
    with criterion(2, "table reproduction (bargaining, Fano, wheel, symmetric, corner map)", 1.0):
        assert sorted_cells(build_correspondence(2, 2)) == corrected(G22_ROWS, G22_MISPRINTS, deal_cell)
        assert sorted_cells(build_correspondence(3, 2)) == corrected(G32_ROWS, G32_MISPRINTS, deal_cell)
        assert sorted_cells(build_correspondence(3, 3)) == corrected(G33_ROWS, G33_MISPRINTS, deal_cell)
        F = gen_fano()
        assert sorted_cells(induced_correspondence(F, F)) == corrected(FANO_ROWS, FANO_MISPRINTS, label_cell)
        W = gen_wheel(3)
        assert sorted_cells(induced_correspondence(W, W)) == corrected(WHEEL3_ROWS, WHEEL3_MISPRINTS, label_cell)
        G6 = induced_correspondence(*gen_symmetric(3, 2))
        assert G6.shape == (4, 6)
        assert sorted_cells(G6) == corrected(SYMMETRIC32_ROWS, SYMMETRIC32_MISPRINTS, digits_cell)
        G7 = jordan_correspondence(corner_map())
        assert G7.shape == (4, 4)
        assert sorted_cells(G7) == corrected(CORNER_ROWS, {}, label_cell)


def test_criterion_3_bargaining_is_tight():
    with criterion(3, "tightness and dichotomy for all mn <= 16", 120):
        sizes = [(m, n) for m in range(1, 17) for n in range(1, 17) if m * n <= 16]
        for m, n in sizes:
            C, D = row_column_hypergraphs(build_correspondence(m, n))
            assert check_dual(C, D).dual, (m, n)
            full = (1 << (m * n)) - 1
            for W in range(full + 1):
                a = greedy_effective("A", W, m, n)[0]
                b = greedy_effective("B", full & ~W, m, n)[0]
                assert a != b, (m, n, W)


def test_criterion_4_constructive_equilibria():
    with criterion(4, "constructive NE on G22, G33, G44 (1000 utilities each)", 120):
        rng = random.Random(SEED)
        for m in (2, 3, 4):
            G = build_correspondence(m, m)
            forms = list(enumerate_game_forms(G)) if m == 2 else None
            for _ in range(1000):
                u = grid_utility(m, m, rng)
                e = solve_bargaining(m, m, u)
                r, c = find_profile(G, e.x_star, e.y_star)
                assert G.cells[r][c] == (e.o_star,)
                assert deviation_scan(m, m, u, e.x_star, e.y_star, e.o_star)
                if m == 2:
                    assert all((r, c) in brute_force_equilibria(g, u) for g in forms)
                elif m == 3:
                    assert cross_forms_scan(G, u, r, c)
                    assert equilibrium_in_all_forms(G, u, (r, c))


def blocker_deal_masks(m, n):
    """deal bitmask for every (x, y) pair, row-major over outcomes"""
    xs = enumerate_monotone_maps(m, n)
    ys = enumerate_monotone_maps(n, m)
    table = {}
    for x in xs:
        for y in ys:
            mask = 0
            for i, j in deals(x, y):
                mask |= 1 << ((i - 1) * n + j - 1)
            table[x.values, y.values] = mask
    return xs, ys, table


def validate_blocker(player, s, W, xs, ys, table):
    if player == "A":
        return all(table[x.values, s.values] & W == 0 for x in xs)
    return all(table[s.values, y.values] & W == 0 for y in ys)


def test_criterion_5_blocking_strategies():
    with criterion(5, "blockers: all W at 4x4, 1e5 samples at 5x5", 120):
        xs, ys, table = blocker_deal_masks(4, 4)
        checked = 0
        for W in range(1 << 16):
            for player in "AB":
                if not greedy_effective(player, W, 4, 4)[0]:
                    assert validate_blocker(player, blocking_strategy(player, W, 4, 4), W, xs, ys, table)
                    checked += 1
        assert checked > 0
        rng = random.Random(SEED)
        xs, ys, table = blocker_deal_masks(5, 5)
        for _ in range(10**5):
            W = rng.getrandbits(25)
            for player in "AB":
                if not greedy_effective(player, W, 5, 5)[0]:
                    assert validate_blocker(player, blocking_strategy(player, W, 5, 5), W, xs, ys, table)


def test_criterion_6_generators():
    with criterion(6, "generators and Seymour join", 60):
        assert check_self_dual(gen_fano()).dual
        for k in range(2, 7):
            assert check_self_dual(gen_wheel(k)).dual
        for k in range(1, 9):
            for l in range(1, 9):
                if k + l - 1 <= 8:
                    assert check_dual(*gen_symmetric(k, l)).dual, (k, l)
        rng = random.Random(SEED)
        pairs = [row_column_hypergraphs(build_correspondence(2, 2))]
        for t in range(100):
            C = random_hypergraph(rng, 8)
            # half the pairs are dual by construction, the rest random
            if t % 2 == 0:
                D = dualize(C)
            else:
                D = Hypergraph(C.ground, tuple(rng.randint(1, (1 << C.p) - 1) for _ in range(rng.randint(1, 8))))
            pairs.append((C, D))
        duals = 0
        for C, D in pairs:
            expected = check_dual(C, D).dual
            duals += expected
            assert check_self_dual(seymour_join(C, D)).dual == expected
        assert 0 < duals < len(pairs)


def random_form(rng):
    rows, cols, p = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 5)
    labels = [f"o{k}" for k in range(1, p + 1)]
    cells = [[(rng.choice(labels),) for _ in range(cols)] for _ in range(rows)]
    used = tuple(dict.fromkeys(c[0] for row in cells for c in row))
    return Correspondence(list(range(rows)), list(range(cols)), cells, used)


def test_criterion_7_pm1_solvability_iff_tight():
    with criterion(7, "+-1 solvability iff tightness", 60):
        forms = list(enumerate_game_forms(build_correspondence(2, 2)))
        for g in forms:
            assert check_pm1_solvability(g)[0] and check_dual(*row_column_hypergraphs(g)).dual
        assert not check_pm1_solvability(PENNIES)[0]
        assert not check_dual(*row_column_hypergraphs(PENNIES)).dual
        rng = random.Random(SEED)
        tight = 0
        for _ in range(50):
            g = random_form(rng)
            verdict = check_dual(*row_column_hypergraphs(g)).dual
            tight += verdict
            assert check_pm1_solvability(g)[0] == verdict
        assert 0 < tight < 50


def test_criterion_8_three_player_certificates():
    with criterion(8, "three-player: not tight, no NE in any form", 60):
        G3 = build3(2, 2, 2)
        hs = coalition_hypergraphs(G3)
        v = certify_not_tight(G3)
        assert v.dual is False and len(v.witness) == 2
        assert all(set(e) & v.witness for e in hs["A"].edge_sets())
        assert not any(set(e) <= v.witness for e in hs["BC"].edge_sets())
        r = certify_no_ne(G3)
        assert r["total_forms"] == G3.count_game_forms() == len(r["forms"])
        assert r["ne_found"] == 0
        assert all(len(f["profiles"]) == 27 and all(p["improving"] for p in f["profiles"]) for f in r["forms"])
        assert r["all_tagged"] and r["consistent_with_tags"]


def test_criterion_9_involution_and_merging():
    with criterion(9, "double dualization and outcome merging", 60):
        rng = random.Random(SEED)
        for _ in range(200):
            H = random_hypergraph(rng, 10)
            assert dualize(dualize(H)).same_family(sperner_reduce(H))
        for _ in range(200):
            C = random_hypergraph(rng, 8)
            D = dualize(C)
            labels = list(C.ground)
            rng.shuffle(labels)
            groups = []
            while labels:
                k = rng.randint(1, len(labels))
                groups.append(labels[:k])
                labels = labels[k:]
            assert check_dual(*merge_outcomes(C, D, groups)).dual


def test_scaling_200():
    with criterion("S", "solve_bargaining at m = n = 200 without a table", 5.0):
        rng = random.Random(SEED)
        e = solve_bargaining(200, 200, grid_utility(200, 200, rng, high=10**6))
    assert deals(e.x_star, e.y_star) == [e.o_star]
