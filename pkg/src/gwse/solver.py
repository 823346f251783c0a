"""Two-player parity solving on game graphs.

The protagonist wins a play when the maximal priority seen infinitely often
is even. Besides Zielonka's recursive algorithm this module provides the
cooperative analysis (all players working together) that the assumption
construction is built on.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TwoPlayerView:
    """A game graph split into protagonist and adversary vertices."""

    graph: object
    protagonist: frozenset

    def __post_init__(self):
        object.__setattr__(self, "protagonist", frozenset(self.protagonist))
        unknown = self.protagonist - set(self.graph.vertices)
        if unknown:
            raise ValueError(f"protagonist vertices not in view: {sorted(map(str, unknown))}")

    @classmethod
    def for_player(cls, graph, player):
        return cls(graph, frozenset(graph.owned(player)))


@dataclass
class SolveResult:
    win_protagonist: set
    win_adversary: set
    strategy_protagonist: dict = field(default_factory=dict)
    strategy_adversary: dict = field(default_factory=dict)


def attractor(view, target, protagonist=True, within=None):
    """Attractor of ``target`` for one side, restricted to ``within``.

    Returns ``(region, strategy)`` where the strategy maps each vertex the
    attracting side owns in ``region - target`` to the first successor (in
    edge order) that was already in the region when the vertex joined.
    """
    g = view.graph
    within = set(g.vertices) if within is None else set(within)
    region = set(target) & within
    mine = view.protagonist if protagonist else set(g.vertices) - view.protagonist
    strategy = {}
    changed = True
    while changed:
        changed = False
        joined = []
        for v in g.vertices:
            if v not in within or v in region:
                continue
            succ = [w for w in g.succ[v] if w in within]
            if v in mine:
                hit = next((w for w in succ if w in region), None)
                if hit is not None:
                    strategy[v] = hit
                    joined.append(v)
            elif succ and all(w in region for w in succ):
                joined.append(v)
        if joined:
            region.update(joined)
            changed = True
    return region, strategy


def solve_zielonka(view, priority):
    """Winning regions and memoryless winning strategies for both sides."""
    g = view.graph
    sinks = g.sinks()
    if sinks:
        raise ValueError(f"view has vertices without successors: {sinks}")
    win_p, win_a, strat_p, strat_a = _zielonka(view, priority, set(g.vertices))
    return SolveResult(win_p, win_a, strat_p, strat_a)


def _zielonka(view, priority, vertices):
    if not vertices:
        return set(), set(), {}, {}
    g = view.graph
    top = max(priority[v] for v in vertices)
    even = top % 2 == 0                      # side favoured by the top priority
    tops = {v: None for v in g.vertices if v in vertices and priority[v] == top}
    attr, attr_strat = attractor(view, tops, protagonist=even, within=vertices)
    win0, win1, s0, s1 = _zielonka(view, priority, vertices - attr)
    # (mine, theirs) from the point of view of the side favoured by ``top``
    mine, theirs, smine, stheirs = (win0, win1, s0, s1) if even else (win1, win0, s1, s0)
    if not theirs:
        mine = set(vertices)
        smine = dict(smine)
        smine.update(attr_strat)
        owned = view.protagonist if even else set(g.vertices) - view.protagonist
        for v in tops:
            if v in owned and v not in smine:
                smine[v] = next(w for w in g.succ[v] if w in vertices)
        result = (mine, set(), smine, {})
    else:
        battr, bstrat = attractor(view, theirs, protagonist=not even, within=vertices)
        win0b, win1b, s0b, s1b = _zielonka(view, priority, vertices - battr)
        mineb, theirsb, sm, st = (win0b, win1b, s0b, s1b) if even else (win1b, win0b, s1b, s0b)
        st = dict(st)
        st.update(stheirs)
        st.update(bstrat)
        result = (mineb, theirsb | battr, sm, st)
    mine, theirs, smine, stheirs = result
    if even:
        return mine, theirs, smine, stheirs
    return theirs, mine, stheirs, smine


# -- cooperative analysis ---------------------------------------------------

def strongly_connected_components(graph, vertices=None, edges=None):
    """Tarjan's algorithm, iterative; components in discovery order."""
    vs = list(graph.vertices) if vertices is None else graph.order(vertices)
    inside = set(vs)
    allowed = None if edges is None else set(edges)

    def successors(u):
        for w in graph.succ[u]:
            if w in inside and (allowed is None or (u, w) in allowed):
                yield w

    index, low, on_stack, stack, comps = {}, {}, set(), [], []
    counter = 0
    for root in vs:
        if root in index:
            continue
        work = [(root, successors(root))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, successors(w)))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _has_internal_edge(graph, comp):
    return any(w in comp for v in comp for w in graph.succ[v])


def _good_components(graph, priority, vertices=None):
    """Yield ``(p, component)`` for each even ``p`` and each SCC of the
    priority-<=p subgraph that contains a priority-p vertex and an edge."""
    vs = set(graph.vertices if vertices is None else vertices)
    for p in sorted({priority[v] for v in vs if priority[v] % 2 == 0}):
        low = {v for v in vs if priority[v] <= p}
        for comp in strongly_connected_components(graph, low):
            if any(priority[v] == p for v in comp) and _has_internal_edge(graph, comp):
                yield p, comp


def recurrent_vertices(graph, priority, vertices=None):
    """Vertices lying on some cycle whose maximal priority is even."""
    out = set()
    for _, comp in _good_components(graph, priority, vertices):
        out |= comp
    return out


def backward_reach(graph, targets, within=None):
    within = set(graph.vertices if within is None else within)
    seen = set(targets) & within
    queue = deque(graph.order(seen))
    while queue:
        v = queue.popleft()
        for u in graph.pred[v]:
            if u in within and u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def cooperative_region(graph, priority):
    """Vertices from which some play satisfies the parity objective."""
    return backward_reach(graph, recurrent_vertices(graph, priority))


def cooperative_distance(graph, targets, within=None):
    """Shortest number of edges from each vertex to ``targets``."""
    within = set(graph.vertices if within is None else within)
    dist = {v: 0 for v in graph.order(set(targets) & within)}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        for u in graph.pred[v]:
            if u in within and u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def edge_can_recur(graph, priority, edge):
    """True iff ``edge`` lies on some cycle whose maximal priority is even."""
    u, v = edge
    if v not in graph.succ.get(u, ()):
        raise ValueError(f"{edge!r} is not an edge of the view")
    for _, comp in _good_components(graph, priority):
        if u in comp and v in comp:
            return True
    return False
