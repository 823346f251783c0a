"""Unsafe/colive edge templates.

A template for player ``i`` holds two sets of player-``i`` edges: unsafe
edges must never be taken, colive edges only finitely often. An edge is
never both; when it would be, the stronger (unsafe) status wins.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping


def _edges(items):
    return frozenset(tuple(e) for e in items)


@dataclass(frozen=True)
class UcaTemplate:
    player: int
    unsafe: frozenset = frozenset()
    colive: frozenset = frozenset()

    def __post_init__(self):
        unsafe = _edges(self.unsafe)
        object.__setattr__(self, "unsafe", unsafe)
        object.__setattr__(self, "colive", _edges(self.colive) - unsafe)

    @property
    def is_true(self):
        return not self.unsafe and not self.colive

    def edges(self):
        return self.unsafe | self.colive


@dataclass(frozen=True)
class AggregateUca:
    """Conjunction of the templates of a group of players."""

    unsafe: frozenset = frozenset()
    colive: frozenset = frozenset()

    def __post_init__(self):
        unsafe = _edges(self.unsafe)
        object.__setattr__(self, "unsafe", unsafe)
        object.__setattr__(self, "colive", _edges(self.colive) - unsafe)

    @property
    def is_true(self):
        return not self.unsafe and not self.colive


def true_template(player):
    return UcaTemplate(player)


def conjoin(a, b):
    if a.player != b.player:
        raise ValueError(f"cannot conjoin templates of players {a.player} and {b.player}")
    return UcaTemplate(a.player, a.unsafe | b.unsafe, a.colive | b.colive)


def uca_equal(a, b):
    return a.player == b.player and a.unsafe == b.unsafe and a.colive == b.colive


class AssumptionProfile(dict):
    """Mapping player -> :class:`UcaTemplate`, one entry per player."""

    def __init__(self, templates=()):
        if isinstance(templates, Mapping):
            templates = templates.items()
        else:
            templates = ((t.player, t) for t in templates)
        super().__init__()
        for i, t in templates:
            if t.player != i:
                raise ValueError(f"template of player {t.player} filed under player {i}")
            self[i] = t

    @classmethod
    def trivial(cls, players):
        return cls({i: UcaTemplate(i) for i in players})


def assumption_of_others(profile, i):
    unsafe, colive = set(), set()
    for j, t in profile.items():
        if j != i:
            unsafe |= t.unsafe
            colive |= t.colive
    return AggregateUca(unsafe, colive)


def lasso_satisfies_uca(lasso, template):
    if any(e in template.unsafe for e in lasso.edges()):
        return False
    return not any(e in template.colive for e in lasso.cycle_edges())


def _ordered(edges, graph):
    if graph is not None:
        return graph.order_edges(edges)
    return sorted(edges, key=lambda e: (str(e[0]), str(e[1])))


def to_ltl_string(template, graph=None):
    """Render in spot-style LTL syntax, e.g. ``G !(v3 & X v4)``."""
    parts = [f"G !({u} & X {v})" for u, v in _ordered(template.unsafe, graph)]
    parts += [f"F G !({u} & X {v})" for u, v in _ordered(template.colive, graph)]
    return " & ".join(parts) if parts else "True"


def template_to_dict(template, graph=None):
    return {
        "player": template.player,
        "unsafe": [list(e) for e in _ordered(template.unsafe, graph)],
        "colive": [list(e) for e in _ordered(template.colive, graph)],
    }


def template_from_dict(doc):
    try:
        return UcaTemplate(int(doc["player"]),
                           [tuple(e) for e in doc.get("unsafe", [])],
                           [tuple(e) for e in doc.get("colive", [])])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed template {doc!r}: {exc}") from None


def template_to_json(template, graph=None):
    return json.dumps(template_to_dict(template, graph))


@dataclass(frozen=True)
class SpecProfile:
    """Per-player specifications ``own_i & (others_i -> parity_i)``.

    Only the templates are stored; the parity objectives come from the game.
    """

    game: object
    templates: AssumptionProfile = field(default_factory=AssumptionProfile)

    def __post_init__(self):
        templates = AssumptionProfile(self.templates)
        for i in self.game.players:
            templates.setdefault(i, UcaTemplate(i))
        object.__setattr__(self, "templates", templates)

    def own(self, i):
        return self.templates[i]

    def others(self, i):
        return assumption_of_others(self.templates, i)

    def parity(self, i):
        return self.game.specs[i]

    def ltl(self, i, graph=None):
        """The specification of player ``i`` as an LTL string."""
        g = self.game.graph if graph is None else graph
        own = to_ltl_string(self.own(i), g)
        others = to_ltl_string(self.others(i), g)
        return f"({own}) & (({others}) -> parity_{i})"
