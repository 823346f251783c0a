import pytest
from hypothesis import given, settings, strategies as st

from gwse.assumptions import Mid
from gwse.engine import (LOSE, Hat, HatMid, Jump, build_win_arena, coalition_game,
                         compute_win, extract_strategy, o_compute_ge, with_environment)
from gwse.game import Game, GameGraph, trivial_spec
from gwse.oracle import (And, Parity, language_included, spec_formula, strategy_wins,
                         template_formula, verify_gwse)
from gwse.templates import AggregateUca, AssumptionProfile, SpecProfile, UcaTemplate
from corpus import corpus, random_game

FIRST = {1: UcaTemplate(1, [("v1", "v2"), ("v3", "v4")], [("v1", "v0")]),
         2: UcaTemplate(2, [], [("v0", "v0")])}


def test_win_arena_trivial(visit):
    a = build_win_arena(visit.graph, UcaTemplate(1), AggregateUca(), visit.specs[1], 1)
    g = a.graph
    assert all(w in visit.graph.vertices for v in visit.graph.vertices for w in g.succ[v])
    assert not a.middle_of and LOSE not in g.index


def test_win_arena_own_unsafe(visit):
    e = ("v3", "v4")
    a = build_win_arena(visit.graph, UcaTemplate(1, [e]), AggregateUca(), visit.specs[1], 1)
    assert e not in a.graph.edge_index
    assert (Hat("v3"), Hat("v4")) not in a.graph.edge_index
    assert not a.middle_of


def test_win_arena_final_templates(persistence, persistence_profile):
    p = persistence_profile
    a = build_win_arena(persistence.graph, p.own(1), p.others(1), persistence.specs[1], 1)
    mids = {m: e for m, e in a.middle_of.items()}
    c2 = [m for m in mids if isinstance(m, Mid) and mids[m] in p.others(1).colive]
    c1 = [m for m in mids if mids[m] == ("v1", "v0")]
    assert len(c2) == 2 and all(a.priority[m] == 2 for m in c2)
    assert len(c1) == 2 and {type(m) for m in c1} == {Mid, HatMid}
    assert all(a.priority[m] == 3 for m in c1)
    assert not any(isinstance(m, Jump) for m in mids)


def test_win_arena_jump(persistence):
    a = build_win_arena(persistence.graph, UcaTemplate(2), AggregateUca([("v1", "v2")]),
                        persistence.specs[2], 2)
    j = Jump("v1", "v2")
    assert a.graph.succ[j] == (Hat("v2"),) and a.priority[j] == 0
    assert a.priority[Hat("v0")] == 0


def test_compute_win_trivial(visit):
    even = trivial_spec(visit.graph.vertices)
    assert compute_win(visit.graph, UcaTemplate(1), AggregateUca(), even, 1) == \
        set(visit.graph.vertices)


def test_compute_win_rounds(persistence, persistence_profile):
    p = persistence_profile
    g = persistence.graph
    assert "v0" in compute_win(g, p.own(1), p.others(1), persistence.specs[1], 1)
    second = SpecProfile(persistence, FIRST)
    assert "v0" not in compute_win(g, second.own(1), second.others(1), persistence.specs[1], 1)


def test_synthesis_persistence(persistence):
    profile, trace = o_compute_ge(persistence)
    assert len(trace) == 3
    assert [it.outcome for it in trace] == ["refined", "refined", "gwse"]
    assert trace[0].after == AssumptionProfile(FIRST)
    assert trace[1].after[1] == FIRST[1]
    assert trace[1].after[2].colive == {("v0", "v0"), ("v0", "v3")}
    assert trace[2].winning == {1: True, 2: True}
    assert profile.templates == trace[1].after


def test_synthesis_visit(visit, visit_profile):
    profile, trace = o_compute_ge(visit)
    assert profile.own(1).unsafe == {("v3", "v4")} and profile.own(2).unsafe == {("v2", "v4")}
    assert profile.own(1).colive == profile.own(2).colive == set()
    assert verify_gwse(visit, profile).ok


def test_synthesis_trivial():
    g = GameGraph(["v"], {"v": 1}, [("v", "v")], "v")
    game = Game(g, {1: {"v": 0}, 2: {"v": 2}})
    profile, trace = o_compute_ge(game)
    assert len(trace) == 1 and all(profile.own(i).is_true for i in (1, 2))


def test_extract_trivial():
    g = GameGraph(["a", "b"], {"a": 1, "b": 2}, [("a", "b"), ("b", "a"), ("a", "a")], "a")
    game = Game(g, {1: trivial_spec(g.vertices), 2: trivial_spec(g.vertices)})
    profile, _ = o_compute_ge(game)
    s = extract_strategy(game, profile, 1)
    assert s.is_memoryless


def test_extract_persistence(persistence, persistence_profile):
    s = extract_strategy(persistence, persistence_profile, 1)
    assert s.move(1, "v1") == "v5" and s.move(1, "v3") == "v0"
    assert strategy_wins(persistence, s, 1, spec_formula(persistence_profile, 1))[0]


def test_extract_visit(visit, visit_profile):
    s = extract_strategy(visit, visit_profile, 1)
    assert all(w != "v4" for (m, v), w in s.moves.items() if v == "v3")
    assert strategy_wins(visit, s, 1, spec_formula(visit_profile, 1))[0]


def test_extract_requires_win(persistence):
    with pytest.raises(ValueError):
        extract_strategy(persistence, SpecProfile(persistence, FIRST), 1)


def test_environment(visit):
    env = with_environment(visit, [])
    assert env.k == 3 and set(env.specs[3].values()) == {0}
    env = with_environment(visit, ["v0"])
    assert env.graph.owner["v0"] == 3 and env.graph.owned(2) == ["v2"]
    _, trace = o_compute_ge(env)
    for it in trace:
        assert it.before[3].is_true and (it.after is None or it.after[3].is_true)
    with pytest.raises(ValueError):
        with_environment(visit, ["nope"])


def test_coalition(visit):
    assert coalition_game(visit, [1, 2]).specs == visit.specs
    solo = coalition_game(visit, [1])
    assert set(solo.specs[2].values()) == {0}
    _, trace = o_compute_ge(solo)
    assert all(it.before[2].is_true and (it.after is None or it.after[2].is_true)
               for it in trace)
    with pytest.raises(ValueError):
        coalition_game(visit, [])


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_environment_neutral(rng):
    game = random_game(rng, players=2, max_vertices=5, max_edges=9)
    # an extra player that owns nothing must not change anything
    plain, t1 = o_compute_ge(game)
    extra, t2 = o_compute_ge(with_environment(game, []))
    assert len(t1) == len(t2)
    for a, b in zip(t1, t2):
        assert all(a.before[i] == b.before[i] for i in game.players)
        assert b.before[3].is_true
    assert (plain is None) == (extra is None)


def test_claims_along_iterations():
    """Every intermediate template admits every jointly winning play, and every
    play that wins under the others' templates."""
    checked = 0
    for game in corpus(200, seed=3, max_edges=9):
        _, trace = o_compute_ge(game)
        goals = And(tuple(Parity(game.specs[i]) for i in game.players))
        for it in trace:
            prof = it.after or it.before
            for i in game.players:
                own = template_formula(prof[i])
                assert language_included(game, goals, own)[0]
                before = [template_formula(it.before[j]) for j in game.players if j != i]
                assert language_included(
                    game, And(tuple(before) + (Parity(game.specs[i]),)), own)[0]
                checked += 1
    assert checked > 100
