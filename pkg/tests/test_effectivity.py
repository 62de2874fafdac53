import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monobargain.effectivity import (GreedyOracle, HypergraphOracle, SetTracker, StaircaseTracker,
                                     blocking_strategy, greedy_effective, hypergraph_effective, mask_outcomes,
                                     outcome_mask, random_monotone_values)
from monobargain.hypergraph import Hypergraph, gen_fano, row_column_hypergraphs
from monobargain.monotone import build_correspondence, deals, enumerate_monotone_maps


def forcing_oracle(player, W, m, n):
    """Brute force over the table: some strategy keeps every cell inside W."""
    G = build_correspondence(m, n, bound=10**6)
    if player == "A":
        return any(all(set(cell) <= W for cell in row) for row in G.cells)
    return any(all(set(G.cells[r][c]) <= W for r in range(len(G.rows))) for c in range(len(G.cols)))


@st.composite
def grids(draw, max_size=4):
    m = draw(st.integers(1, max_size))
    n = draw(st.integers(1, max_size))
    W = draw(st.integers(0, (1 << (m * n)) - 1))
    return m, n, W


def test_greedy_examples():
    assert greedy_effective("A", {(1, 2), (2, 1)}, 2, 2) == (False, None)
    full = {(i, j) for i in range(1, 4) for j in range(1, 4)}
    ok, x = greedy_effective("A", full, 3, 3)
    assert ok and x.values == (1, 1, 1)
    assert not greedy_effective("A", {(2, 1), (2, 2)}, 2, 2)[0]
    assert greedy_effective("A", {(1, 1), (1, 2)}, 1, 2)[0]
    ok, y = greedy_effective("B", full, 3, 3)
    assert ok and y.values == (1, 1, 1)
    assert greedy_effective("A", set(), 2, 2) == (False, None)


@given(grids())
def test_greedy_matches_table_oracle(case):
    m, n, mask = case
    W = set(mask_outcomes(mask, m, n))
    for player in "AB":
        ok, s = greedy_effective(player, mask, m, n)
        assert ok == forcing_oracle(player, W, m, n)
        if ok:
            pairs = [(i, s(i)) for i in range(1, m + 1)] if player == "A" else \
                [(s(j), j) for j in range(1, n + 1)]
            assert set(pairs) <= W


@given(grids())
def test_greedy_witness_is_lexicographically_minimal(case):
    m, n, mask = case
    ok, x = greedy_effective("A", mask, m, n)
    witnesses = [x2.values for x2 in enumerate_monotone_maps(m, n)
                 if all(mask >> ((i - 1) * n + x2(i) - 1) & 1 for i in range(1, m + 1))]
    assert ok == bool(witnesses)
    if ok:
        assert x.values == min(witnesses)


@given(grids(max_size=5))
def test_dichotomy_on_random_subsets(case):
    m, n, mask = case
    full = (1 << (m * n)) - 1
    a = greedy_effective("A", mask, m, n)[0]
    b = greedy_effective("B", full & ~mask, m, n)[0]
    assert a != b


@pytest.mark.parametrize("m,n", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_greedy_agrees_with_hypergraph_oracle_for_all_subsets(m, n):
    C, D = row_column_hypergraphs(build_correspondence(m, n))
    index = C.index()
    for mask in range(1 << (m * n)):
        hmask = 0
        for i, j in mask_outcomes(mask, m, n):
            hmask |= 1 << index[f"o_{i}_{j}"]
        assert greedy_effective("A", mask, m, n)[0] == hypergraph_effective(C, hmask)[0]
        assert greedy_effective("B", mask, m, n)[0] == hypergraph_effective(D, hmask)[0]


@given(grids(), st.integers(0, 2**16 - 1))
def test_effectivity_is_monotone(case, extra):
    m, n, mask = case
    bigger = mask | (extra & ((1 << (m * n)) - 1))
    for player in "AB":
        assert greedy_effective(player, mask, m, n)[0] <= greedy_effective(player, bigger, m, n)[0]


def test_blocking_examples():
    y = blocking_strategy("A", {(1, 2), (2, 1)}, 2, 2)
    assert y.values == (1, 2)
    for x in enumerate_monotone_maps(2, 2):
        assert not set(deals(x, y)) & {(1, 2), (2, 1)}
    assert blocking_strategy("A", set(), 3, 3).values == (1, 1, 1)
    assert blocking_strategy("B", set(), 3, 2).values == (1, 1, 1)
    with pytest.raises(ValueError):
        blocking_strategy("A", {(1, 1), (2, 2)}, 2, 2)


@given(grids(max_size=5))
def test_blocking_strategy_keeps_all_deals_out(case):
    m, n, mask = case
    W = set(mask_outcomes(mask, m, n))
    for player in "AB":
        if greedy_effective(player, mask, m, n)[0]:
            continue
        s = blocking_strategy(player, mask, m, n)
        if player == "A":
            assert s.codomain == m and s.domain == n
            for x in enumerate_monotone_maps(m, n):
                assert not set(deals(x, s)) & W
        else:
            assert s.codomain == n and s.domain == m
            for y in enumerate_monotone_maps(n, m):
                assert not set(deals(s, y)) & W


def test_hypergraph_effective_examples():
    C1 = Hypergraph.from_sets(["o_1_1", "o_1_2", "o_2_1", "o_2_2"],
                              [("o_1_1", "o_2_1"), ("o_1_1", "o_2_2"), ("o_1_2", "o_2_2")])
    assert hypergraph_effective(C1, {"o_1_1", "o_2_1"}) == (True, 0)
    assert hypergraph_effective(C1, set()) == (False, None)
    F = gen_fano()
    for k, e in enumerate(F.edges):
        comp = ((1 << 7) - 1) & ~e
        # the complement of a line holds no line: every two lines meet
        assert hypergraph_effective(F, comp) == (False, None)
        assert hypergraph_effective(F, e) == (True, k)


def test_outcome_mask_validation():
    assert outcome_mask({(1, 1), (2, 2)}, 2, 2) == 0b1001
    with pytest.raises(ValueError):
        outcome_mask({(3, 1)}, 2, 2)
    with pytest.raises(ValueError):
        outcome_mask(1 << 4, 2, 2)


def test_random_monotone_values_are_monotone_and_cover():
    rng = random.Random(0)
    seen = set()
    for _ in range(2000):
        v = random_monotone_values(3, 3, rng)
        assert all(a <= b for a, b in zip(v, v[1:])) and all(1 <= t <= 3 for t in v)
        seen.add(v)
    assert len(seen) == 10


@settings(max_examples=150)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_staircase_tracker_matches_greedy_step_by_step(m, n, data):
    order = data.draw(st.permutations([(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]))
    batch = data.draw(st.integers(1, 3))
    for player in "AB":
        tracker = StaircaseTracker(player, m, n)
        current = set()
        for start in range(0, len(order), batch):
            for o in order[:]:
                if o in current:
                    continue
                probe = tracker.probe(o)
                expected = greedy_effective(player, current | {o}, m, n)
                assert probe[0] == expected[0]
                if probe[0]:
                    s = probe[1]
                    pairs = [(i, s(i)) for i in range(1, m + 1)] if player == "A" else \
                        [(s(j), j) for j in range(1, n + 1)]
                    assert set(pairs) <= current | {o}
            chunk = order[start:start + batch]
            tracker.add(chunk)
            current.update(chunk)
            assert tracker.effective() == greedy_effective(player, current, m, n)


def test_trackers_agree_with_oracles():
    m, n = 3, 3
    C, D = row_column_hypergraphs(build_correspondence(m, n))
    rng = random.Random(5)
    outcomes = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for _ in range(50):
        rng.shuffle(outcomes)
        h = HypergraphOracle(C).tracker()
        s = SetTracker(GreedyOracle("A", m, n))
        g = GreedyOracle("A", m, n).tracker()
        for o in outcomes:
            label = f"o_{o[0]}_{o[1]}"
            assert h.probe(label)[0] == s.probe(o)[0] == g.probe(o)[0]
            h.add([label])
            s.add([o])
            g.add([o])
            assert h.effective()[0] == s.effective()[0] == g.effective()[0]
