"""Iterative synthesis of secure specification profiles.

Each player ``i`` gets a template ``own_i`` and the specification
``own_i & (others_i -> parity_i)``. Synthesis starts from trivial templates,
checks whether every player can enforce its specification alone, and
otherwise strengthens every template with :func:`compute_uca` until either
all checks pass or nothing changes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .assumptions import Mid, _check_owned, compute_uca, even_top
from .game import Game, GameGraph, trivial_spec
from .solver import TwoPlayerView, solve_zielonka
from .strategy import FiniteMemoryStrategy
from .templates import (AssumptionProfile, SpecProfile, UcaTemplate,
                        assumption_of_others, conjoin, uca_equal)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hat:
    """Copy of vertex ``v`` in the part of the arena reached after the other
    players broke their safety template."""
    v: object

    def __str__(self):
        return f"{self.v}'"


@dataclass(frozen=True)
class HatMid:
    u: object
    v: object

    def __str__(self):
        return f"<{self.u}-{self.v}>'"


@dataclass(frozen=True)
class Jump:
    u: object
    v: object

    def __str__(self):
        return f"<{self.u}=>{self.v}>"


@dataclass(frozen=True)
class _Lose:
    def __str__(self):
        return "lose"


LOSE = _Lose()


@dataclass(frozen=True)
class WinArena:
    view: TwoPlayerView
    priority: dict
    origin: dict          # arena vertex -> original vertex (None for middles)
    copy: dict            # arena vertex -> 1 or 2
    middle_of: dict       # middle vertex -> original edge

    @property
    def graph(self):
        return self.view.graph


def build_win_arena(graph, own, others, spec, i):
    """Arena whose parity objective encodes ``own & (others -> spec)``.

    The first copy enforces both templates, with the other players' colive
    middles rewarded by the top even priority; taking one of their unsafe
    edges jumps to the second copy, where only ``own`` matters. A player
    vertex left without edges is sent to a losing sink.
    """
    rest = set(graph.owner.values()) - {i}
    _check_owned(graph, own.unsafe | own.colive, {i}, "own")
    _check_owned(graph, others.unsafe | others.colive, rest, "others'")
    top = even_top(spec)
    s1, c1, s2, c2 = own.unsafe, own.colive, others.unsafe, others.colive

    vertices, owner, priority, origin, copy, middle_of = [], {}, {}, {}, {}, {}

    def add(v, who, prio, orig, cp, edge=None):
        vertices.append(v)
        owner[v] = who
        priority[v] = prio
        origin[v] = orig
        copy[v] = cp
        if edge is not None:
            middle_of[v] = edge

    def side(u):
        return 1 if graph.owner[u] == i else 2

    for v in graph.vertices:
        add(v, side(v), spec[v], v, 1)
    for v in graph.vertices:
        add(Hat(v), side(v), 0, v, 2)

    edges = []
    for e in graph.edges:
        u, v = e
        if e in s1:
            pass
        elif e in c1 or e in c2:
            m = Mid(u, v)
            add(m, 2, top + 1 if e in c1 else top, None, 1, e)
            edges += [(u, m), (m, v)]
        elif e in s2:
            j = Jump(u, v)
            add(j, 2, 0, None, 1, e)
            edges += [(u, j), (j, Hat(v))]
        else:
            edges.append(e)
    for e in graph.edges:
        u, v = e
        if e in s1:
            continue
        if e in c1:
            m = HatMid(u, v)
            add(m, 2, top + 1, None, 2, e)
            edges += [(Hat(u), m), (m, Hat(v))]
        else:
            edges.append((Hat(u), Hat(v)))

    arena = GameGraph(vertices, owner, edges, graph.initial)
    sinks = arena.sinks()
    if sinks:
        add(LOSE, 2, 1, None, 0)
        edges += [(v, LOSE) for v in sinks] + [(LOSE, LOSE)]
        arena = GameGraph(vertices, owner, edges, graph.initial)
    return WinArena(TwoPlayerView.for_player(arena, 1), priority, origin, copy, middle_of)


def compute_win(graph, own, others, spec, i):
    """Vertices from which player ``i`` enforces ``own & (others -> spec)``."""
    arena = build_win_arena(graph, own, others, spec, i)
    result = solve_zielonka(arena.view, arena.priority)
    return {v for v in graph.vertices if v in result.win_protagonist}


# -- synthesis ----------------------------------------------------------------

@dataclass
class Iteration:
    number: int
    before: AssumptionProfile
    winning: dict                   # player -> bool (initial vertex won)
    regions: dict                   # player -> set of vertices
    after: AssumptionProfile | None = None
    outcome: str = "refined"        # refined | gwse | unchanged | no-assumption


@dataclass
class SynthesisTrace:
    iterations: list = field(default_factory=list)

    def __len__(self):
        return len(self.iterations)

    def __iter__(self):
        return iter(self.iterations)

    def __getitem__(self, n):
        return self.iterations[n]


def o_compute_ge(game):
    """Synthesize a specification profile.

    Returns ``(profile, trace)``; ``profile`` is ``None`` when the template
    refinement gets stuck or some player has no assumption at all.
    """
    g = game.graph
    players = game.players
    profile = AssumptionProfile.trivial(players)
    trace = SynthesisTrace()
    bound = 2 * game.k * len(g.edges)
    number = 0
    while True:
        number += 1
        if number > max(bound, 1):
            raise RuntimeError(f"synthesis exceeded {bound} iterations")
        regions, winning = {}, {}
        for i in players:
            others = assumption_of_others(profile, i)
            regions[i] = compute_win(g, profile[i], others, game.specs[i], i)
            winning[i] = g.initial in regions[i]
        step = Iteration(number, profile, winning, regions)
        trace.iterations.append(step)
        if all(winning.values()):
            step.outcome = "gwse"
            log.info("iteration %d: every player wins", number)
            return SpecProfile(game, profile), trace
        updated = {}
        for i in players:
            found = compute_uca(g, assumption_of_others(profile, i), game.specs[i], i)
            if found is None:
                step.outcome = "no-assumption"
                log.info("iteration %d: no assumption for player %d", number, i)
                return None, trace
            updated[i] = conjoin(profile[i], found)
        updated = AssumptionProfile(updated)
        step.after = updated
        if all(uca_equal(profile[i], updated[i]) for i in players):
            step.outcome = "unchanged"
            log.info("iteration %d: templates unchanged", number)
            return None, trace
        profile = updated


def extract_strategy(game, profile, i):
    """A strategy for player ``i`` that enforces its specification.

    Memory is the arena copy: it switches from 1 to 2 once another player
    takes one of its unsafe edges.
    """
    g = game.graph
    own, others = profile.own(i), profile.others(i)
    arena = build_win_arena(g, own, others, game.specs[i], i)
    result = solve_zielonka(arena.view, arena.priority)
    if g.initial not in result.win_protagonist:
        raise ValueError(f"player {i} cannot enforce its specification from {g.initial!r}")
    sigma = result.strategy_protagonist
    memory = (1, 2) if others.unsafe else (1,)

    def target(w):
        if isinstance(w, (Mid, HatMid)):
            return w.v
        if isinstance(w, Hat):
            return w.v
        return w

    def fallback(v):
        succ = g.succ[v]
        return next((w for w in succ if (v, w) not in own.unsafe), succ[0])

    moves = {}
    for v in g.owned(i):
        moves[(1, v)] = target(sigma[v]) if v in sigma and sigma[v] != LOSE else fallback(v)
        if len(memory) == 2:
            h = Hat(v)
            moves[(2, v)] = target(sigma[h]) if h in sigma and sigma[h] != LOSE else fallback(v)
    updates = {(1, e): 2 for e in g.order_edges(others.unsafe)} if len(memory) == 2 else {}
    return FiniteMemoryStrategy(i, memory, 1, moves, updates)


# -- reductions -----------------------------------------------------------------

def with_environment(game, env_vertices):
    """Add an environment player owning ``env_vertices`` with a trivial objective."""
    g = game.graph
    env = set(env_vertices)
    unknown = env - set(g.vertices)
    if unknown:
        raise ValueError(f"environment vertices not in game: {sorted(map(str, unknown))}")
    e = game.k + 1
    owner = {v: e if v in env else g.owner[v] for v in g.vertices}
    specs = dict(game.specs)
    specs[e] = trivial_spec(g.vertices)
    return Game(GameGraph(g.vertices, owner, g.edges, g.initial), specs)


def coalition_game(game, members):
    """Keep the objectives of ``members``; everyone else gets a trivial one."""
    members = set(members)
    if not members:
        raise ValueError("coalition must be nonempty")
    unknown = members - set(game.players)
    if unknown:
        raise ValueError(f"unknown players {sorted(unknown)}")
    specs = {i: (game.specs[i] if i in members else trivial_spec(game.graph.vertices))
             for i in game.players}
    return Game(game.graph, specs)
