import random

import pytest
from hypothesis import given, settings, strategies as st

from gwse.assumptions import Mid, approx_apa, build_assumption_arena, compute_uca, odd_top
from gwse.engine import compute_win
from gwse.game import GameGraph, induced_subgraph, trivial_spec
from gwse.oracle import And, Colive, Parity, Unsafe, language_included, template_formula
from gwse.solver import cooperative_region, edge_can_recur
from gwse.templates import AggregateUca, UcaTemplate
from corpus import arena_agrees, random_game, random_profile

P1_FIRST = AggregateUca([("v1", "v2"), ("v3", "v4")], [("v1", "v0")])


def test_arena_identity(visit):
    arena = build_assumption_arena(visit.graph, AggregateUca(), visit.specs[1], 1)
    g = arena.graph
    assert g.vertices == visit.graph.vertices and g.edges == visit.graph.edges
    assert arena.view.protagonist == {"v1", "v3", "v4"}
    assert arena.middle_of == {}


def test_arena_under_player1_template(persistence):
    arena = build_assumption_arena(persistence.graph, P1_FIRST, persistence.specs[2], 2)
    g = arena.graph
    assert ("v1", "v2") not in g.edge_index and ("v3", "v4") not in g.edge_index
    m = Mid("v1", "v0")
    assert arena.middle_of == {m: ("v1", "v0")}
    assert g.succ["v1"] == (m, "v5") and g.succ[m] == ("v0",)
    assert arena.priority[m] == odd_top(persistence.specs[2]) == 1
    assert set(g.edges_of([1])) == set(persistence.graph.edges_of(2))


def test_arena_rejects_own_edges(persistence):
    with pytest.raises(ValueError):
        build_assumption_arena(persistence.graph, AggregateUca([("v1", "v2")]),
                               persistence.specs[1], 1)


def test_approx_apa_persistence(persistence):
    g = persistence.graph
    t1 = approx_apa(g, persistence.specs[1], 1)
    assert t1.unsafe == {("v1", "v2"), ("v3", "v4")} and t1.colive == {("v1", "v0")}
    t2 = approx_apa(g, persistence.specs[2], 2)
    assert t2.unsafe == set() and t2.colive == {("v0", "v0")}


def test_approx_apa_visit(visit):
    t = approx_apa(visit.graph, visit.specs[1], 1)
    assert t.unsafe == {("v3", "v4")} and t.colive == set()


def test_approx_apa_none_outside_region(visit):
    assert approx_apa(visit.graph, visit.specs[1], 1, init="v4") is None


def test_compute_uca_second_round(persistence):
    g = persistence.graph
    t2 = compute_uca(g, P1_FIRST, persistence.specs[2], 2)
    assert t2.unsafe == set() and t2.colive == {("v0", "v0"), ("v0", "v3")}
    t1 = compute_uca(g, AggregateUca([], [("v0", "v0")]), persistence.specs[1], 1)
    assert t1.unsafe == P1_FIRST.unsafe and t1.colive == P1_FIRST.colive


def test_compute_uca_none():
    # player 2 owns the only way into the good vertex and the template forbids it
    g = GameGraph(["a", "b"], {"a": 2, "b": 1}, [("a", "a"), ("a", "b"), ("b", "b")], "a")
    spec = {"a": 1, "b": 0}
    assert compute_uca(g, AggregateUca([], []), spec, 1) is not None
    assert compute_uca(g, AggregateUca([("a", "b")]), spec, 1) is None


def random_case(rng, max_vertices=7):
    game = random_game(rng, players=(2, 3), max_vertices=max_vertices, max_edges=12)
    i = rng.choice(game.players)
    others = random_profile(rng, game)
    agg = AggregateUca(*[set().union(*(getattr(others[j], f) for j in game.players if j != i))
                         for f in ("unsafe", "colive")])
    return game, i, agg


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_permissive_and_implementable(rng):
    game, i, agg = random_case(rng)
    g, spec = game.graph, game.specs[i]
    t = compute_uca(g, agg, spec, i)
    if t is None:
        return
    assert t.edges() <= set(g.edges_of(i))
    assumption = And((Unsafe(agg.unsafe), Colive(agg.colive), Parity(spec)))
    assert language_included(game, assumption, template_formula(t))[0]
    everywhere = compute_win(g, t, AggregateUca(), trivial_spec(g.vertices), i)
    assert everywhere == set(g.vertices)


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_colive_edges_cannot_recur(rng):
    game = random_game(rng, players=(2, 3), max_vertices=7, max_edges=12)
    i = rng.choice(game.players)
    spec = game.specs[i]
    t = approx_apa(game.graph, spec, i)
    if t is None:
        return
    sub = induced_subgraph(game.graph, cooperative_region(game.graph, spec))
    assert not any(edge_can_recur(sub, spec, e) for e in t.colive)
    assert game.graph.initial in cooperative_region(game.graph, spec)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_projection_property(rng):
    game, i, agg = random_case(rng)
    arena_agrees(rng, game, i, agg)
