import random

import pytest
from hypothesis import given, settings, strategies as st

from gwse.game import GameGraph
from gwse.oracle import Not, Parity, strategy_wins
from gwse.solver import (TwoPlayerView, attractor, cooperative_region, edge_can_recur,
                         recurrent_vertices, solve_zielonka)
from gwse.strategy import memoryless
from corpus import random_game


def loop(priority):
    g = GameGraph(["v"], {"v": 1}, [("v", "v")], "v")
    return TwoPlayerView(g, {"v"}), {"v": priority}


def test_attractor_empty(visit):
    view = TwoPlayerView.for_player(visit.graph, 1)
    assert attractor(view, set())[0] == set()


def test_attractor_to_v4(visit):
    view = TwoPlayerView.for_player(visit.graph, 1)
    region, strategy = attractor(view, {"v4"})
    assert region == set(visit.graph.vertices)
    assert strategy == {"v3": "v4", "v1": "v0"}


def test_attractor_everything(visit):
    view = TwoPlayerView.for_player(visit.graph, 1)
    assert attractor(view, set(visit.graph.vertices))[0] == set(visit.graph.vertices)


def test_attractor_adversary_side(visit):
    # v2 and v0 are forced first; then v1 and finally v3 have nowhere else to go
    view = TwoPlayerView.for_player(visit.graph, 1)
    region, strategy = attractor(view, {"v4"}, protagonist=False)
    assert region == set(visit.graph.vertices)
    assert strategy == {"v2": "v4", "v0": "v2"}


def test_zielonka_trivial():
    view, prio = loop(0)
    assert solve_zielonka(view, prio).win_protagonist == {"v"}
    view, prio = loop(1)
    assert solve_zielonka(view, prio).win_adversary == {"v"}


def test_zielonka_rejects_sinks():
    g = GameGraph(["a", "b"], {"a": 1, "b": 1}, [("a", "b")], "a")
    with pytest.raises(ValueError):
        solve_zielonka(TwoPlayerView(g, {"a"}), {"a": 0, "b": 0})


def test_player1_cannot_visit_alone(visit):
    view = TwoPlayerView.for_player(visit.graph, 1)
    assert "v0" in solve_zielonka(view, visit.specs[1]).win_adversary


def test_cooperative_region(visit, persistence):
    assert cooperative_region(visit.graph, visit.specs[1]) == {"v0", "v1", "v2", "v3"}
    assert cooperative_region(persistence.graph, persistence.specs[1]) == {"v0", "v1", "v3", "v5"}
    even = {v: 2 for v in visit.graph.vertices}
    assert cooperative_region(visit.graph, even) == set(visit.graph.vertices)


def test_recurrent_vertices(visit, persistence):
    assert recurrent_vertices(persistence.graph, persistence.specs[1]) == {"v5"}
    assert recurrent_vertices(visit.graph, visit.specs[1]) == {"v0", "v1", "v2", "v3"}
    g = GameGraph(["a", "b", "c"], {"a": 1, "b": 1, "c": 1},
                  [("a", "b"), ("b", "c"), ("c", "c")], "a")
    assert recurrent_vertices(g, {"a": 0, "b": 2, "c": 1}) == set()


def test_edge_can_recur(persistence):
    g, spec = persistence.graph, persistence.specs[1]
    assert edge_can_recur(g, spec, ("v5", "v5"))
    assert not edge_can_recur(g, spec, ("v1", "v0"))
    one = GameGraph(["v"], {"v": 1}, [("v", "v")], "v")
    assert not edge_can_recur(one, {"v": 3}, ("v", "v"))
    with pytest.raises(ValueError):
        edge_can_recur(g, spec, ("v5", "v0"))


def two_player(rng, max_vertices=8, max_edges=14, max_priority=4):
    game = random_game(rng, players=2, max_vertices=max_vertices, max_edges=max_edges,
                       max_priority=max_priority)
    return game, TwoPlayerView.for_player(game.graph, 1), game.specs[1]


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_determinacy_and_strategies(rng):
    game, view, prio = two_player(rng)
    res = solve_zielonka(view, prio)
    vertices = set(game.graph.vertices)
    assert res.win_protagonist | res.win_adversary == vertices
    assert not res.win_protagonist & res.win_adversary
    g = game.graph
    for side, region, strat in ((1, res.win_protagonist, res.strategy_protagonist),
                                (2, res.win_adversary, res.strategy_adversary)):
        assert set(strat) <= region
        assert all(g.owner[v] == side for v in strat)
        assert all(w in g.succ[v] for v, w in strat.items())
        assert {v for v in region if g.owner[v] == side} <= set(strat)
    # every play consistent with the winning strategy wins, from every winning vertex
    s1 = memoryless(1, res.strategy_protagonist)
    s2 = memoryless(2, res.strategy_adversary)
    for v in res.win_protagonist:
        assert strategy_wins(game, s1, 1, Parity(prio), start=v)[0]
    for v in res.win_adversary:
        assert strategy_wins(game, s2, 2, Not(Parity(prio)), start=v)[0]


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_attractor_monotone(rng):
    game, view, _ = two_player(rng)
    vs = list(game.graph.vertices)
    small = set(rng.sample(vs, rng.randint(0, len(vs))))
    big = small | set(rng.sample(vs, rng.randint(0, len(vs))))
    for side in (True, False):
        assert attractor(view, small, side)[0] <= attractor(view, big, side)[0]


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cooperative_region_is_solitaire_win(rng):
    game, _, prio = two_player(rng)
    g = game.graph
    solitaire = TwoPlayerView(g, set(g.vertices))
    assert cooperative_region(g, prio) == solve_zielonka(solitaire, prio).win_protagonist
