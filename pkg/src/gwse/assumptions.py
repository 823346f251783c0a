"""Computing unsafe/colive assumptions on a single player.

:func:`approx_apa` derives, for one player, the edges that must never be
taken (they leave the cooperatively winning region) and the edges that may
only be taken finitely often (they do not make progress towards a good
cycle). :func:`compute_uca` does the same while taking the other players'
templates into account, by first encoding those templates into an arena.
"""
from __future__ import annotations

from dataclasses import dataclass

from .game import GameGraph
from .solver import (TwoPlayerView, cooperative_distance, cooperative_region,
                     recurrent_vertices)
from .templates import UcaTemplate


@dataclass(frozen=True)
class Mid:
    """Vertex inserted in the middle of edge ``(u, v)``."""
    u: object
    v: object

    def __str__(self):
        return f"<{self.u}-{self.v}>"


def odd_top(priority):
    """Smallest odd number >= every priority."""
    top = max(priority.values(), default=0)
    return top if top % 2 else top + 1


def even_top(priority):
    """Smallest even number >= every priority."""
    top = max(priority.values(), default=0)
    return top if top % 2 == 0 else top + 1


@dataclass(frozen=True)
class AssumptionArena:
    view: TwoPlayerView
    priority: dict
    middle_of: dict
    origin: dict

    @property
    def graph(self):
        return self.view.graph


def _check_owned(graph, edges, players, what):
    for e in edges:
        if e not in graph.edge_index:
            raise ValueError(f"{what} edge {e!r} is not an edge of the game")
        if graph.owner[e[0]] not in players:
            raise ValueError(f"{what} edge {e!r} is owned by player {graph.owner[e[0]]}")


def build_assumption_arena(graph, others, spec, i):
    """Encode the other players' template into a two-player arena.

    Player ``i`` keeps all its edges. Edges the others must never take are
    removed; edges they may take only finitely often get a middle vertex
    carrying the top odd priority.
    """
    rest = set(graph.owner.values()) - {i}
    _check_owned(graph, others.unsafe, rest, "unsafe")
    _check_owned(graph, others.colive, rest, "colive")
    top = odd_top(spec)
    vertices = list(graph.vertices)
    owner = {v: 1 if graph.owner[v] == i else 2 for v in vertices}
    priority = {v: spec[v] for v in vertices}
    origin = {v: v for v in vertices}
    middle_of = {}
    edges = []
    for e in graph.edges:
        u, v = e
        if graph.owner[u] == i:
            edges.append(e)
        elif e in others.unsafe:
            continue
        elif e in others.colive:
            m = Mid(u, v)
            vertices.append(m)
            owner[m] = 2
            priority[m] = top
            origin[m] = e
            middle_of[m] = e
            edges += [(u, m), (m, v)]
        else:
            edges.append(e)
    arena = GameGraph(vertices, owner, edges, graph.initial)
    return AssumptionArena(TwoPlayerView.for_player(arena, 1), priority, middle_of, origin)


def approx_apa(graph, spec, i, init=None):
    """Unsafe/colive template on player ``i`` for the parity objective ``spec``.

    Returns ``None`` when ``init`` cannot satisfy ``spec`` even with
    everybody's help. Otherwise every play satisfying ``spec`` also
    satisfies the template, and player ``i`` can always comply with it.
    """
    init = graph.initial if init is None else init
    region = cooperative_region(graph, spec)
    if init not in region:
        return None
    rank = cooperative_distance(graph, recurrent_vertices(graph, spec), within=region)
    unsafe, colive = [], []
    for u, v in graph.edges_of(i):
        if u not in region:
            continue
        if v not in region:
            unsafe.append((u, v))
        elif rank[u] > 0 and rank[v] >= rank[u]:
            colive.append((u, v))
    return UcaTemplate(i, unsafe, colive)


def compute_uca(graph, others, spec, i, init=None):
    """Template on player ``i`` for ``spec`` under the others' template."""
    arena = build_assumption_arena(graph, others, spec, i)
    found = approx_apa(arena.graph, arena.priority, 1, graph.initial if init is None else init)
    if found is None:
        return None
    template = UcaTemplate(i, found.unsafe, found.colive)
    own = set(graph.edges_of(i))
    assert template.edges() <= own, "arena template escaped player edges"
    return template
