"""Brute-force ground truth on small games.

Everything here works on ultimately periodic plays. Whether a play
satisfies a boolean combination of parity objectives and edge templates
only depends on

* the original vertices and template edges seen infinitely often, and
* the unsafe-template edges taken at least once.

:func:`enumerate_recurrences` lists every combination of these that some
play from the initial vertex realizes, by decomposing strongly connected
parts of the (product) graph. All checks below reduce to evaluating
formulas on that finite list. Nothing in this module uses the parity
solver or the synthesis engine.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .game import Lasso
from .strategy import FiniteMemoryStrategy

DEFAULT_MAX_EDGES = 16


class OracleRefusal(RuntimeError):
    """The instance is larger than the configured oracle bound."""

    def __init__(self, size, bound):
        self.size = size
        self.bound = bound
        super().__init__(f"oracle refuses: {size} edges exceed the bound of {bound}")


# -- formulas -------------------------------------------------------------------

class Formula:
    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True, eq=False)
class Parity(Formula):
    priority: dict

    def eval(self, inf_vertices, inf_edges, seen_edges):
        return max(self.priority[v] for v in inf_vertices) % 2 == 0


@dataclass(frozen=True)
class Unsafe(Formula):
    """None of ``edges`` is ever taken."""
    edges: frozenset

    def eval(self, inf_vertices, inf_edges, seen_edges):
        return not (self.edges & seen_edges)


@dataclass(frozen=True)
class Colive(Formula):
    """Each of ``edges`` is taken only finitely often."""
    edges: frozenset

    def eval(self, inf_vertices, inf_edges, seen_edges):
        return not (self.edges & inf_edges)


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def eval(self, *_):
        return self.value


@dataclass(frozen=True)
class And(Formula):
    parts: tuple

    def eval(self, *args):
        return all(p.eval(*args) for p in self.parts)


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple

    def eval(self, *args):
        return any(p.eval(*args) for p in self.parts)


@dataclass(frozen=True)
class Not(Formula):
    part: Formula

    def eval(self, *args):
        return not self.part.eval(*args)


TRUE = Const(True)
FALSE = Const(False)


def implies(a, b):
    return Or((Not(a), b))


def template_formula(template):
    return And((Unsafe(frozenset(template.unsafe)), Colive(frozenset(template.colive))))


def spec_formula(profile, i):
    """``own_i & (others_i -> parity_i)`` for a :class:`SpecProfile`."""
    return And((template_formula(profile.own(i)),
                implies(template_formula(profile.others(i)), Parity(profile.parity(i)))))


def atoms(formula):
    """``(unsafe edges, colive edges)`` mentioned anywhere in ``formula``."""
    unsafe, colive = set(), set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Unsafe):
            unsafe |= f.edges
        elif isinstance(f, Colive):
            colive |= f.edges
        elif isinstance(f, (And, Or)):
            stack.extend(f.parts)
        elif isinstance(f, Not):
            stack.append(f.part)
    return unsafe, colive


def holds_on_lasso(formula, lasso):
    cycle = set(lasso.cycle_edges())
    return formula.eval(frozenset(lasso.cycle), frozenset(cycle), frozenset(lasso.edges()))


# -- structures: graphs and strategy products -------------------------------------

class Structure:
    """Finite transition structure whose states are labelled by game vertices
    and whose transitions are labelled by game edges."""

    def __init__(self, init, succ, label):
        self.init = init
        self.succ = succ            # state -> [(state, game edge)]
        self.label = label          # state -> game vertex

    @property
    def n_edges(self):
        return sum(len(s) for s in self.succ.values())

    @classmethod
    def of_graph(cls, graph, start=None):
        init = graph.initial if start is None else start
        return cls.explore(init, lambda v: [(w, (v, w)) for w in graph.succ[v]], lambda v: v)

    @classmethod
    def explore(cls, init, step, label):
        succ, labels = {}, {}
        queue = deque([init])
        succ[init] = None
        while queue:
            s = queue.popleft()
            out = step(s)
            succ[s] = out
            labels[s] = label(s)
            for t, _ in out:
                if t not in succ:
                    succ[t] = None
                    queue.append(t)
        return cls(init, succ, labels)


def product(game, strategies, start=None):
    """Plays of ``game`` where every player in ``strategies`` follows its strategy.

    States are ``(vertex, memories)`` with one memory per fixed strategy.
    """
    g = game.graph
    order = sorted(strategies)
    strats = [strategies[j] for j in order]
    fixed = {j: n for n, j in enumerate(order)}
    init = (g.initial if start is None else start, tuple(s.initial for s in strats))

    def step(state):
        v, mems = state
        j = g.owner[v]
        if j in fixed:
            succ = [strats[fixed[j]].move(mems[fixed[j]], v)]
        else:
            succ = g.succ[v]
        out = []
        for w in succ:
            e = (v, w)
            out.append(((w, tuple(s.update(m, e) for s, m in zip(strats, mems))), e))
        return out

    return Structure.explore(init, step, lambda s: s[0])


# -- recurrence enumeration ---------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceCase:
    """All plays whose infinitely visited vertices are ``vertices``, whose
    infinitely taken relevant edges are ``edges`` and whose finite prefix
    can take exactly one of the relevant-unsafe sets in ``prefix_sets``."""

    vertices: frozenset
    edges: frozenset
    prefix_sets: frozenset
    loops: tuple = field(compare=False, repr=False)   # representative (states, transitions)

    @property
    def loop_edges(self):
        """Transitions of one strongly connected part realizing this case."""
        return self.loops[0][1]

    @property
    def reach_profile(self):
        return self.prefix_sets


def _sccs(states, trans):
    """Strongly connected parts of ``states`` using transitions ``trans``
    (pairs of states); returns (component, internal transitions) pairs."""
    fwd = {s: [] for s in states}
    for a, b in trans:
        fwd[a].append(b)

    def reach(s):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in fwd[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    reach_of = {s: reach(s) for s in states}
    done, out = set(), []
    for s in states:
        if s in done:
            continue
        comp = frozenset(t for t in reach_of[s] if s in reach_of[t])
        done |= comp
        inner = frozenset((a, b) for a, b in trans if a in comp and b in comp)
        if inner:
            out.append((comp, inner))
    return out


def _prefix_sets(struct, unsafe_rel):
    """For each state, the sets of relevant unsafe edges some path from the
    initial state takes before reaching it; with parent links for witnesses."""
    start = (struct.init, frozenset())
    parent = {start: None}
    queue = deque([start])
    while queue:
        s, seen = queue.popleft()
        for t, e in struct.succ[s]:
            nxt = (t, seen | {e} if e in unsafe_rel else seen)
            if nxt not in parent:
                parent[nxt] = (s, seen)
                queue.append(nxt)
    sets = {}
    for s, seen in parent:
        sets.setdefault(s, set()).add(seen)
    return sets, parent


def _structure(obj, start=None):
    return obj if isinstance(obj, Structure) else Structure.of_graph(obj, start)


def enumerate_recurrences(graph, relevant_edges, unsafe_edges=None,
                          max_edges=DEFAULT_MAX_EDGES, start=None):
    """Every (infinity set, relevant loop edges, prefix) combination some play realizes.

    ``graph`` is a game graph or a :class:`Structure`. ``relevant_edges``
    are the game edges whose infinite occurrence matters; ``unsafe_edges``
    (defaults to ``relevant_edges``) those whose mere occurrence matters.
    """
    struct = _structure(graph, start)
    if struct.n_edges > max_edges:
        raise OracleRefusal(struct.n_edges, max_edges)
    relevant = frozenset(relevant_edges)
    unsafe_rel = relevant if unsafe_edges is None else frozenset(unsafe_edges)
    relevant = relevant | unsafe_rel
    return _enumerate(struct, relevant, unsafe_rel)[0]


def _enumerate(struct, relevant, unsafe_rel):
    states = list(struct.succ)
    trans = frozenset((s, t) for s in states for t, _ in struct.succ[s])
    tlabel = {}
    for s in states:
        for t, e in struct.succ[s]:
            tlabel[(s, t)] = e
    prefix, parent = _prefix_sets(struct, unsafe_rel)

    cases = {}
    seen = set()

    def explore(comp_states, comp_trans):
        for comp, inner in _sccs([s for s in states if s in comp_states], comp_trans):
            if (comp, inner) in seen:
                continue
            seen.add((comp, inner))
            verts = frozenset(struct.label[s] for s in comp)
            loop_rel = frozenset(tlabel[t] for t in inner if tlabel[t] in relevant)
            entry = cases.setdefault((verts, loop_rel), [set(), []])
            for s in comp:
                entry[0] |= prefix.get(s, set())
            entry[1].append((comp, inner))
            for v in sorted(verts, key=str):
                keep = frozenset(s for s in comp if struct.label[s] != v)
                explore(keep, frozenset(t for t in inner if t[0] in keep and t[1] in keep))
            for e in sorted(loop_rel, key=str):
                explore(comp, frozenset(t for t in inner if tlabel[t] != e))

    explore(frozenset(states), trans)
    out = [RecurrenceCase(v, e, frozenset(frozenset(x) for x in data[0]), tuple(data[1]))
           for (v, e), data in cases.items()]
    return out, (prefix, parent, tlabel)


def _witness(struct, case, prefix_set, aux):
    """A concrete lasso (in game vertices) realizing ``case`` with ``prefix_set``."""
    prefix, parent, tlabel = aux
    rank = {s: n for n, s in enumerate(struct.succ)}
    for comp, inner in case.loops:
        entries = sorted((s for s in comp if prefix_set in prefix.get(s, ())), key=rank.get)
        if not entries:
            continue
        entry = entries[0]
        path = []
        node = (entry, prefix_set)
        while parent[node] is not None:
            node = parent[node]
            path.append(node[0])
        path.reverse()
        cycle = _covering_cycle(entry, comp, inner, case, struct.label, tlabel, rank)
        return Lasso([struct.label[s] for s in path], [struct.label[s] for s in cycle])
    raise AssertionError("no witness for recurrence case")


def _covering_cycle(start, comp, inner, case, label, tlabel, rank):
    """Closed walk from ``start`` inside ``comp`` that takes every edge of
    ``case.edges`` and visits every vertex of ``case.vertices``."""
    def key(t):
        return rank[t[0]], rank[t[1]]

    fwd = {}
    for a, b in sorted(inner, key=key):
        fwd.setdefault(a, []).append(b)

    def path(a, b):
        prev = {a: None}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            if u == b:
                break
            for w in fwd.get(u, ()):
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        out = []
        while b is not None:
            out.append(b)
            b = prev[b]
        return out[::-1]

    walk = [start]
    for e in sorted(case.edges, key=str):
        a, b = min((t for t in inner if tlabel[t] == e), key=key)
        walk += path(walk[-1], a)[1:] + [b]
    for v in sorted(case.vertices, key=str):
        if any(label[s] == v for s in walk):
            continue
        target = min((s for s in comp if label[s] == v), key=rank.get)
        walk += path(walk[-1], target)[1:]
    walk += path(walk[-1], start)[1:]
    if len(walk) == 1:
        walk.append(start)
    return walk[:-1]


def _all_plays(struct, formula, max_edges):
    """Yield ``(holds, case, prefix_set)`` over every recurrence case."""
    if struct.n_edges > max_edges:
        raise OracleRefusal(struct.n_edges, max_edges)
    unsafe, colive = atoms(formula)
    unsafe = frozenset(unsafe)
    cases, aux = _enumerate(struct, frozenset(unsafe | colive), unsafe)
    # small loops first, so that witnesses are short
    cases.sort(key=lambda c: (len(c.vertices), len(c.edges), sorted(map(str, c.vertices)),
                              sorted(map(str, c.edges))))
    for case in cases:
        loop_unsafe = case.edges & unsafe
        for x in sorted(case.prefix_sets, key=lambda x: (len(x), sorted(map(str, x)))):
            yield formula.eval(case.vertices, case.edges, x | loop_unsafe), case, x, aux


def find_violation(struct, formula, max_edges=DEFAULT_MAX_EDGES):
    """A lasso of ``struct`` violating ``formula``, or ``None``."""
    for holds, case, x, aux in _all_plays(struct, formula, max_edges):
        if not holds:
            return _witness(struct, case, x, aux)
    return None


# -- language level -----------------------------------------------------------

def language_equivalent(game, a, b, max_edges=DEFAULT_MAX_EDGES):
    """Do ``a`` and ``b`` accept the same plays from the initial vertex?

    Returns ``(True, None)`` or ``(False, lasso)`` with a distinguishing play.
    """
    struct = Structure.of_graph(game.graph)
    differ = Or((And((a, Not(b))), And((b, Not(a)))))
    witness = find_violation(struct, Not(differ), max_edges)
    return witness is None, witness


def language_included(game, a, b, max_edges=DEFAULT_MAX_EDGES):
    """Is every play accepted by ``a`` also accepted by ``b``?"""
    struct = Structure.of_graph(game.graph)
    witness = find_violation(struct, implies(a, b), max_edges)
    return witness is None, witness


# -- strategies -----------------------------------------------------------------

def _memory_size(strategies):
    n = 1
    for s in strategies.values():
        n *= len(s.memory)
    return n


def strategy_wins(game, strategy, i, formula, start=None, max_edges=DEFAULT_MAX_EDGES):
    """Does every play consistent with ``strategy`` satisfy ``formula``?

    ``strategy`` is player ``i``'s :class:`FiniteMemoryStrategy`, or a dict
    player -> strategy for a group (then ``i`` may be ``None``). All other
    players move freely. Returns ``(True, None)`` or ``(False, lasso)``.
    """
    if isinstance(strategy, dict):
        strategies = strategy
    else:
        if i is not None and strategy.player != i:
            raise ValueError(f"strategy belongs to player {strategy.player}, not {i}")
        strategies = {strategy.player: strategy}
    struct = product(game, strategies, start)
    witness = find_violation(struct, formula, max_edges * _memory_size(strategies))
    return witness is None, witness


def outcome(game, strategies, start=None):
    """The unique play of a complete strategy profile, as a lasso."""
    g = game.graph
    state = (g.initial if start is None else start,
             tuple(strategies[j].initial for j in sorted(strategies)))
    order = sorted(strategies)
    index = {}
    trail = []
    while state not in index:
        index[state] = len(trail)
        trail.append(state)
        v, mems = state
        j = g.owner[v]
        w = strategies[j].move(mems[order.index(j)], v)
        mems = tuple(strategies[p].update(m, (v, w)) for p, m in zip(order, mems))
        state = (w, mems)
    cut = index[state]
    return Lasso([s[0] for s in trail[:cut]], [s[0] for s in trail[cut:]])


def enumerate_strategies(game, i, trigger=(), memory_bound=2, start=None):
    """All strategies of player ``i`` from the flag family, lazily.

    With ``memory_bound == 1`` (or no ``trigger``) the strategies are
    memoryless. Otherwise memory is a flag that flips from 0 to 1 the first
    time an edge of ``trigger`` is taken. Only choices at states reachable
    under the strategy (all other players free) are enumerated, so every
    yielded strategy differs in behaviour from all others.
    """
    if memory_bound < 1:
        raise ValueError("memory bound must be at least 1")
    g = game.graph
    trigger = frozenset(map(tuple, trigger))
    flag = memory_bound >= 2 and bool(trigger)
    memory = (0, 1) if flag else (0,)
    updates = {(0, e): 1 for e in g.order_edges(trigger)} if flag else {}
    start = g.initial if start is None else start

    def nxt(m, e):
        return 1 if flag and (m == 1 or e in trigger) else 0

    choice = {}

    def first_open():
        seen = {(start, 0)}
        queue = deque(seen)
        while queue:
            v, m = queue.popleft()
            if g.owner[v] == i:
                if (m, v) not in choice:
                    return (m, v)
                succ = [choice[(m, v)]]
            else:
                succ = g.succ[v]
            for w in succ:
                s = (w, nxt(m, (v, w)))
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return None

    def rec():
        slot = first_open()
        if slot is None:
            yield FiniteMemoryStrategy(i, memory, 0, dict(choice), updates)
            return
        for w in g.succ[slot[1]]:
            choice[slot] = w
            yield from rec()
        del choice[slot]

    yield from rec()


def winning_strategies(game, i, formula, trigger=(), memory_bound=2, start=None,
                       max_edges=DEFAULT_MAX_EDGES, first=False):
    """Strategies of the flag family that win ``formula`` for player ``i``."""
    found = []
    for s in enumerate_strategies(game, i, trigger, memory_bound, start):
        if strategy_wins(game, s, i, formula, start, max_edges)[0]:
            found.append(s)
            if first:
                break
    return found


def winning_vertices(game, i, formula, trigger=(), memory_bound=2, max_edges=DEFAULT_MAX_EDGES):
    """Vertices from which some flag-family strategy of ``i`` wins ``formula``."""
    return {v for v in game.graph.vertices
            if winning_strategies(game, i, formula, trigger, memory_bound, v, max_edges, True)}


# -- secure equilibria -------------------------------------------------------------

def preference_less(p, q, j):
    """Is payoff ``p`` strictly worse than ``q`` for player ``j`` (1-based)?"""
    if len(p) != len(q):
        raise ValueError("payoff profiles differ in length")
    a = j - 1
    if p[a] != q[a]:
        return p[a] < q[a]
    others = [n for n in range(len(p)) if n != a]
    return all(p[n] >= q[n] for n in others) and any(p[n] > q[n] for n in others)


def payoff(game, strategies):
    play = outcome(game, strategies)
    return tuple(int(play.satisfies_parity(game.specs[j])) for j in game.players)


@dataclass
class WseVerdict:
    ok: bool
    condition: str | None = None      # "outcome" or "deviation"
    player: int | None = None
    play: Lasso | None = None
    deviation_bound: int | None = None

    def __bool__(self):
        return self.ok


def _deviation_formula(game, i):
    others = [Parity(game.specs[j]) for j in game.players if j != i]
    return implies(Parity(game.specs[i]), And(tuple(others)))


def check_wse(game, strategies, deviation_memory_bound=None, max_edges=DEFAULT_MAX_EDGES):
    """Is the strategy profile a winning secure equilibrium?

    With ``deviation_memory_bound=1`` only memoryless deviations are tried,
    one outcome at a time. With ``None`` or any larger bound every deviation
    is covered at once: all plays consistent with the other players'
    strategies are examined, which subsumes every finite memory bound.
    """
    if deviation_memory_bound is not None and deviation_memory_bound < 1:
        raise ValueError("deviation memory bound must be at least 1")
    play = outcome(game, strategies)
    for j in game.players:
        if not play.satisfies_parity(game.specs[j]):
            return WseVerdict(False, "outcome", j, play, deviation_memory_bound)
    for i in game.players:
        rest = {j: s for j, s in strategies.items() if j != i}
        if deviation_memory_bound != 1:
            ok, witness = strategy_wins(game, rest, None, _deviation_formula(game, i),
                                        max_edges=max_edges)
            if not ok:
                return WseVerdict(False, "deviation", i, witness, deviation_memory_bound)
            continue
        for dev in enumerate_strategies(game, i, memory_bound=1):
            trial = dict(rest)
            trial[i] = dev
            p = payoff(game, trial)
            if preference_less((1,) * game.k, p, i):
                return WseVerdict(False, "deviation", i, outcome(game, trial), 1)
    return WseVerdict(True, deviation_bound=deviation_memory_bound)


@dataclass
class GwseReport:
    general: bool
    general_witness: Lasso | None
    realizable: dict
    witnesses: dict
    secure: bool
    secure_counterexample: dict | None
    memory_bound: int
    max_edges: int
    strategy_counts: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.general and all(self.realizable.values()) and self.secure

    def to_dict(self, graph=None):
        def lasso(l):
            return None if l is None else {"prefix": list(l.prefix), "cycle": list(l.cycle)}
        cex = self.secure_counterexample
        if cex is not None:
            cex = {"condition": cex["condition"], "player": cex["player"],
                   "play": lasso(cex["play"]),
                   "profile": {str(j): s.to_dict() for j, s in cex["profile"].items()}}
        return {
            "ok": self.ok,
            "general": self.general,
            "general_witness": lasso(self.general_witness),
            "realizable": {str(i): r for i, r in self.realizable.items()},
            "secure": self.secure,
            "secure_counterexample": cex,
            "memory_bound": self.memory_bound,
            "max_edges": self.max_edges,
            "strategy_counts": {str(i): n for i, n in self.strategy_counts.items()},
        }


def verify_gwse(game, profile, memory_bound=2, max_edges=DEFAULT_MAX_EDGES):
    """Check generality, realizability and security of a specification profile.

    Generality is exact. Realizability and security quantify over the flag
    strategy family of :func:`enumerate_strategies` at ``memory_bound``;
    deviations in the security check are unrestricted.
    """
    g = game.graph
    if len(g.edges) > max_edges:
        raise OracleRefusal(len(g.edges), max_edges)
    players = game.players
    specs = {i: spec_formula(profile, i) for i in players}
    goals = And(tuple(Parity(game.specs[i]) for i in players))
    general, general_witness = language_equivalent(
        game, And(tuple(specs[i] for i in players)), goals, max_edges)

    winners = {}
    for i in players:
        trigger = profile.others(i).unsafe
        winners[i] = winning_strategies(game, i, specs[i], trigger, memory_bound,
                                        max_edges=max_edges)
    realizable = {i: bool(winners[i]) for i in players}
    witnesses = {i: ws[0] for i, ws in winners.items() if ws}

    counterexample = _security_counterexample(game, winners, max_edges)
    return GwseReport(general, general_witness, realizable, witnesses,
                      counterexample is None, counterexample, memory_bound, max_edges,
                      {i: len(ws) for i, ws in winners.items()})


def _security_counterexample(game, winners, max_edges):
    players = game.players
    if not all(winners.values()):
        return None
    for combo in itertools.product(*(winners[i] for i in players)):
        strategies = dict(zip(players, combo))
        play = outcome(game, strategies)
        for j in players:
            if not play.satisfies_parity(game.specs[j]):
                return {"condition": "outcome", "player": j, "play": play,
                        "profile": strategies}
    for i in players:
        rest = [j for j in players if j != i]
        formula = _deviation_formula(game, i)
        for combo in itertools.product(*(winners[j] for j in rest)):
            strategies = dict(zip(rest, combo))
            ok, witness = strategy_wins(game, strategies, None, formula, max_edges=max_edges)
            if not ok:
                return {"condition": "deviation", "player": i, "play": witness,
                        "profile": strategies}
    return None
