"""Finite-memory (Mealy style) strategies."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class FiniteMemoryStrategy:
    """Strategy of ``player`` with a finite memory.

    ``moves[(m, v)]`` is the successor chosen at owned vertex ``v`` in memory
    state ``m``. ``updates[(m, (u, w))]`` is the memory after edge ``(u, w)``
    is taken in state ``m``; missing entries keep the memory unchanged, which
    makes the update function total.
    """

    player: int
    memory: tuple
    initial: object
    moves: Mapping = field(default_factory=dict)
    updates: Mapping = field(default_factory=dict)

    def move(self, m, v):
        try:
            return self.moves[(m, v)]
        except KeyError:
            raise ValueError(f"strategy of player {self.player} undefined at "
                             f"vertex {v!r} in memory {m!r}") from None

    def update(self, m, edge):
        return self.updates.get((m, tuple(edge)), m)

    @property
    def is_memoryless(self):
        return len(self.memory) == 1

    def check(self, graph):
        """List problems: moves along non-edges, unknown memory states."""
        problems = []
        mem = set(self.memory)
        if self.initial not in mem:
            problems.append(f"initial memory {self.initial!r} unknown")
        for (m, v), w in self.moves.items():
            if m not in mem:
                problems.append(f"move uses unknown memory {m!r}")
            if graph.owner.get(v) != self.player:
                problems.append(f"move at {v!r} not owned by player {self.player}")
            if w not in graph.succ.get(v, ()):
                problems.append(f"move {v!r}->{w!r} is not an edge")
        for (m, e), m2 in self.updates.items():
            if m not in mem or m2 not in mem:
                problems.append(f"update {m!r}->{m2!r} uses unknown memory")
            if tuple(e) not in graph.edge_index:
                problems.append(f"update on non-edge {e!r}")
        return problems

    def to_dict(self):
        return {
            "player": self.player,
            "memory": list(self.memory),
            "initial": self.initial,
            "moves": [[m, v, w] for (m, v), w in self.moves.items()],
            "updates": [[m, e[0], e[1], m2] for (m, e), m2 in self.updates.items()],
        }

    @classmethod
    def from_dict(cls, doc):
        return cls(
            int(doc["player"]),
            tuple(doc["memory"]),
            doc["initial"],
            {(m, v): w for m, v, w in doc.get("moves", [])},
            {(m, (u, w)): m2 for m, u, w, m2 in doc.get("updates", [])},
        )


def memoryless(player, choice):
    """Strategy that always picks ``choice[v]`` at ``v``."""
    return FiniteMemoryStrategy(player, (0,), 0, {(0, v): w for v, w in choice.items()})
