import pytest
from hypothesis import given
from hypothesis import strategies as st

from monobargain import serialize as ser
from monobargain.errors import ParseError
from monobargain.hypergraph import Hypergraph, check_dual, gen_fano, gen_symmetric
from monobargain.jordan import jordan_correspondence, corner_map
from monobargain.monotone import MonotoneMap, build_correspondence
from monobargain.solver import UtilityProfile, solve_bargaining


def roundtrip(data):
    return ser.loads(ser.dumps(data))


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_strategy_round_trip(m, n, data):
    vals = tuple(sorted(data.draw(st.lists(st.integers(1, n), min_size=m, max_size=m))))
    s = MonotoneMap(vals, n)
    assert ser.strategy_from_json(roundtrip(ser.strategy_to_json(s)), n) == s


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_correspondence_round_trip(m, n):
    G = build_correspondence(m, n)
    again = ser.correspondence_from_json(roundtrip(ser.correspondence_to_json(G)))
    assert again.cells == G.cells and again.rows == G.rows and again.cols == G.cols
    assert again.outcomes == G.outcomes


def test_label_correspondence_round_trip():
    G = jordan_correspondence(corner_map())
    again = ser.correspondence_from_json(roundtrip(ser.correspondence_to_json(G)))
    assert again.cells == G.cells and set(again.outcomes) == set(G.outcomes)


@given(st.integers(1, 7), st.lists(st.integers(1, 127), max_size=8))
def test_hypergraph_round_trip(p, masks):
    ground = [f"v{k}" for k in range(p)]
    edges = [[ground[k] for k in range(p) if mask >> k & 1] for mask in masks]
    edges = [e for e in edges if e]
    H = Hypergraph.from_sets(ground, edges)
    again = ser.hypergraph_from_json(roundtrip(ser.hypergraph_to_json(H)))
    assert again.ground == H.ground and again.same_family(H)


def test_pair_and_verdict():
    C, D = gen_symmetric(3, 2)
    C2, D2 = ser.pair_from_json(roundtrip(ser.pair_to_json(C, D)))
    assert C2.same_family(C) and D2.same_family(D)
    v = ser.verdict_to_json(check_dual(C, D))
    assert roundtrip(v)["dual"] is True


def test_utility_round_trip_grid():
    u = UtilityProfile.from_grid([[1, 2], [3, 4]], [[4, 3], [2, 1]])
    u2, m, n = ser.utility_from_json(roundtrip(ser.utility_to_json(u, 2, 2)))
    assert (m, n) == (2, 2) and u2.uA == u.uA and u2.uB == u.uB


def test_utility_label_form():
    u, m, n = ser.utility_from_json({"uA": {"a": 1, "b": 0}, "uB": {"a": 0, "b": 1}})
    assert m is None and u.uA["a"] == 1 and u.uB["b"] == 1


def test_equilibrium_round_trip():
    u = UtilityProfile.from_grid([[1, 2], [3, 4]], [[4, 3], [2, 1]])
    e = solve_bargaining(2, 2, u)
    data = roundtrip(ser.equilibrium_to_json(e))
    x, y = ser.equilibrium_from_json(data, 2, 2)
    assert x == e.x_star and y == e.y_star
    assert tuple(data["outcome"]) == e.o_star


@pytest.mark.parametrize("bad", [
    lambda: ser.loads("{not json"),
    lambda: ser.strategy_from_json([2, 1], 2),
    lambda: ser.strategy_from_json("12", 2),
    lambda: ser.strategy_from_json([1, 3], 2),
    lambda: ser.hypergraph_from_json({"ground": ["a"]}),
    lambda: ser.hypergraph_from_json({"ground": [1], "edges": []}),
    lambda: ser.hypergraph_from_json({"ground": ["a"], "edges": [["b"]]}),
    lambda: ser.pair_from_json({"C": {"ground": [], "edges": []}}),
    lambda: ser.correspondence_from_json({"rows": [[1]], "cols": [[1]], "cells": []}),
    lambda: ser.correspondence_from_json({"rows": [[1]], "cols": [[1]], "cells": [[]]}),
    lambda: ser.utility_from_json({"uA": [[1, 2]], "uB": [[1]]}),
    lambda: ser.utility_from_json({"uA": [[1.5]], "uB": [[1]]}),
    lambda: ser.utility_from_json({"m": 2, "n": 1, "uA": [[1]], "uB": [[1]]}),
    lambda: ser.utility_from_json({"uA": {"a": 1}, "uB": {"b": 1}}),
    lambda: ser.utility_from_json([]),
    lambda: ser.equilibrium_from_json({"x": [1, 1]}, 2, 2),
])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        bad()


def test_fano_json_shape():
    data = ser.hypergraph_to_json(gen_fano())
    assert len(data["ground"]) == 7 and len(data["edges"]) == 7
    assert all(len(e) == 3 for e in data["edges"])
