"""Game graphs, parity objectives and k-player games.

Vertex order and edge order are taken from the input document and used as
the canonical order everywhere: successor lists, set iteration in the
solvers and rendering all follow it, so every result is deterministic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

Vertex = Hashable
Edge = tuple


class GameError(ValueError):
    """Raised for malformed game documents or invalid games."""


class ParseError(GameError):
    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ValidationError(GameError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True, eq=False)
class GameGraph:
    """A turn-based game graph.

    ``owner`` maps every vertex to a player index. Sinks are tolerated here
    since subgames and arenas routinely create them; :class:`Game` rejects
    them.
    """

    vertices: tuple
    owner: Mapping
    edges: tuple
    initial: Vertex
    succ: Mapping = field(init=False, repr=False)
    pred: Mapping = field(init=False, repr=False)
    index: Mapping = field(init=False, repr=False)
    edge_index: Mapping = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "owner", dict(self.owner))
        succ = {v: [] for v in self.vertices}
        pred = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if u in succ:
                succ[u].append(v)
            if v in pred:
                pred[v].append(u)
        object.__setattr__(self, "succ", {v: tuple(s) for v, s in succ.items()})
        object.__setattr__(self, "pred", {v: tuple(p) for v, p in pred.items()})
        object.__setattr__(self, "index", {v: n for n, v in enumerate(self.vertices)})
        object.__setattr__(self, "edge_index", {e: n for n, e in enumerate(self.edges)})

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.owner == other.owner
                and self.edges == other.edges and self.initial == other.initial)

    def __hash__(self):
        return hash((self.vertices, self.edges, self.initial))

    def __len__(self):
        return len(self.vertices)

    def owned(self, player):
        return [v for v in self.vertices if self.owner[v] == player]

    def edges_of(self, players):
        """Edges leaving vertices owned by any of ``players``."""
        if not isinstance(players, (set, frozenset, list, tuple)):
            players = {players}
        players = set(players)
        return [e for e in self.edges if self.owner[e[0]] in players]

    def sinks(self):
        return [v for v in self.vertices if not self.succ[v]]

    def order(self, items):
        """Sort vertices into canonical order."""
        return sorted(items, key=self.index.__getitem__)

    def order_edges(self, edges):
        return sorted(edges, key=self.edge_index.__getitem__)


@dataclass(frozen=True)
class Game:
    """A k-player game: a graph plus one priority function per player.

    ``specs[i]`` maps every vertex to the priority used by player ``i``'s
    parity objective (max priority seen infinitely often must be even).
    """

    graph: GameGraph
    specs: Mapping

    def __post_init__(self):
        object.__setattr__(self, "specs", {int(i): dict(p) for i, p in self.specs.items()})
        errors = validate_game(self)
        if errors:
            raise ValidationError(errors)

    @property
    def players(self):
        return tuple(sorted(self.specs))

    @property
    def k(self):
        return len(self.specs)

    @property
    def initial(self):
        return self.graph.initial


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic play ``prefix . cycle^omega``."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @property
    def start(self):
        return self.prefix[0] if self.prefix else self.cycle[0]

    def prefix_edges(self):
        path = self.prefix + self.cycle[:1]
        return list(zip(path, path[1:]))

    def cycle_edges(self):
        return list(zip(self.cycle, self.cycle[1:] + self.cycle[:1]))

    def edges(self):
        return self.prefix_edges() + self.cycle_edges()

    def is_valid(self, graph):
        edges = set(graph.edges)
        return all(e in edges for e in self.edges())

    def satisfies_parity(self, priority):
        return max(priority[v] for v in self.cycle) % 2 == 0

    def project(self, keep):
        """Drop vertices not in ``keep`` (and map through ``keep`` if it is a dict)."""
        if isinstance(keep, Mapping):
            f = lambda seq: tuple(keep[v] for v in seq if v in keep)
        else:
            f = lambda seq: tuple(v for v in seq if v in keep)
        return Lasso(f(self.prefix), f(self.cycle))

    def __str__(self):
        pre = " ".join(map(str, self.prefix))
        return f"{pre} ({' '.join(map(str, self.cycle))})^w".strip()


def validate_game(game):
    """Return a list of human-readable invariant violations (empty if valid)."""
    g = game.graph
    out = []
    k = len(game.specs)
    if k < 1:
        out.append("game needs at least one player")
    if set(game.specs) != set(range(1, k + 1)):
        out.append(f"players must be numbered 1..{k}, got {sorted(game.specs)}")
    seen = set()
    for v in g.vertices:
        if v in seen:
            out.append(f"duplicate vertex {v!r}")
        seen.add(v)
    if g.initial not in seen:
        out.append(f"initial vertex {g.initial!r} is not declared")
    for v in g.vertices:
        if v not in g.owner:
            out.append(f"vertex {v!r} has no owner")
        elif not (isinstance(g.owner[v], int) and 1 <= g.owner[v] <= k):
            out.append(f"vertex {v!r} owned by unknown player {g.owner[v]!r}")
    seen_edges = set()
    for e in g.edges:
        if len(e) != 2:
            out.append(f"edge {e!r} is not a pair")
            continue
        for end in e:
            if end not in seen:
                out.append(f"edge {e!r} uses undeclared vertex {end!r}")
        if e in seen_edges:
            out.append(f"duplicate edge {e!r}")
        seen_edges.add(e)
    for v in g.vertices:
        if not g.succ.get(v):
            out.append(f"vertex {v!r} has no outgoing edge")
    for i, prio in game.specs.items():
        for v in g.vertices:
            p = prio.get(v)
            if p is None:
                out.append(f"player {i} has no priority for vertex {v!r}")
            elif not isinstance(p, int) or p < 0:
                out.append(f"player {i} priority {p!r} at {v!r} is not a nonnegative integer")
    return out


def induced_subgraph(graph, keep_vertices=None, drop_edges=()):
    """Restrict ``graph`` to ``keep_vertices`` and remove ``drop_edges``.

    The result may contain sinks.
    """
    keep = set(graph.vertices if keep_vertices is None else keep_vertices)
    drop = set(map(tuple, drop_edges))
    vertices = [v for v in graph.vertices if v in keep]
    edges = [e for e in graph.edges
             if e[0] in keep and e[1] in keep and e not in drop]
    return GameGraph(vertices, {v: graph.owner[v] for v in vertices}, edges, graph.initial)


def reachable(graph, sources, edges=None):
    """Vertices reachable from ``sources`` (optionally using only ``edges``)."""
    allowed = None if edges is None else set(edges)
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        for w in graph.succ[u]:
            if allowed is not None and (u, w) not in allowed:
                continue
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# -- desugaring -------------------------------------------------------------

def buchi(vertices, targets):
    """Priorities for 'visit ``targets`` infinitely often'."""
    targets = set(targets)
    return {v: 2 if v in targets else 1 for v in vertices}


def co_buchi(vertices, targets):
    """Priorities for 'eventually stay in ``targets``'."""
    targets = set(targets)
    return {v: 0 if v in targets else 1 for v in vertices}


def trivial_spec(vertices):
    return {v: 0 for v in vertices}


# -- JSON documents ---------------------------------------------------------

def _require(cond, message, location):
    if not cond:
        raise ParseError(message, location)


def game_from_dict(doc):
    _require(isinstance(doc, dict), "game document must be a JSON object", "document")
    for key in ("players", "init", "vertices", "edges"):
        _require(key in doc, f"missing field {key!r}", "document")
    k = doc["players"]
    _require(isinstance(k, int) and not isinstance(k, bool) and k >= 1,
             "'players' must be a positive integer", "players")
    _require(isinstance(doc["vertices"], list), "'vertices' must be a list", "vertices")
    vertices, owner, declared = [], {}, {i: {} for i in range(1, k + 1)}
    for n, entry in enumerate(doc["vertices"]):
        loc = f"vertices[{n}]"
        _require(isinstance(entry, dict), "vertex entry must be an object", loc)
        vid = entry.get("id")
        _require(isinstance(vid, str) and vid, "vertex id must be a nonempty string", loc + ".id")
        _require("owner" in entry, "missing owner", loc)
        own = entry["owner"]
        _require(isinstance(own, int) and not isinstance(own, bool), "owner must be an integer",
                 loc + ".owner")
        vertices.append(vid)
        owner[vid] = own
        prio = entry.get("priority", {})
        _require(isinstance(prio, dict), "priority must map player to integer", loc + ".priority")
        for key, p in prio.items():
            _require(str(key).isdigit() and 1 <= int(key) <= k,
                     f"unknown player {key!r}", loc + ".priority")
            _require(isinstance(p, int) and not isinstance(p, bool),
                     "priority must be an integer", f"{loc}.priority.{key}")
            declared[int(key)][vid] = p
    _require(isinstance(doc["edges"], list), "'edges' must be a list", "edges")
    edges = []
    for n, e in enumerate(doc["edges"]):
        _require(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e),
                 "edge must be a pair of vertex ids", f"edges[{n}]")
        edges.append((e[0], e[1]))
    sugar = doc.get("sugar", {})
    _require(isinstance(sugar, dict), "'sugar' must be an object", "sugar")
    specs = {}
    for i in range(1, k + 1):
        entry = sugar.get(str(i))
        if entry is not None:
            loc = f"sugar.{i}"
            _require(isinstance(entry, dict) and len(entry) == 1
                     and next(iter(entry)) in ("buchi", "cobuchi"),
                     "sugar entry must be {'buchi': [...]} or {'cobuchi': [...]}", loc)
            kind, targets = next(iter(entry.items()))
            _require(isinstance(targets, list), "targets must be a list", loc)
            make = buchi if kind == "buchi" else co_buchi
            specs[i] = make(vertices, targets)
        else:
            specs[i] = declared[i]
    graph = GameGraph(vertices, owner, edges, doc["init"])
    return Game(graph, specs)


def parse_game(text):
    """Parse and validate a JSON game document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return game_from_dict(doc)


def game_to_dict(game):
    g = game.graph
    return {
        "players": game.k,
        "init": g.initial,
        "vertices": [
            {"id": v, "owner": g.owner[v],
             "priority": {str(i): game.specs[i][v] for i in game.players}}
            for v in g.vertices
        ],
        "edges": [list(e) for e in g.edges],
    }


def serialize_game(game):
    return json.dumps(game_to_dict(game), indent=2)


def load_game(path):
    with open(path) as fh:
        return parse_game(fh.read())
