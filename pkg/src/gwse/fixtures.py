"""Two small bundled games used throughout tests and demos.

``visit_game``: each player wants to see its own vertex infinitely often
and both lose once the play drops into ``v4``.

``persistence_game``: both players want the play to eventually stay in a
target set; player 1 in ``{v5}``, player 2 in ``{v4, v5}``.
"""
from importlib import resources

from .game import parse_game
from .templates import AssumptionProfile, UcaTemplate


def _load(name):
    return parse_game(resources.files(__package__).joinpath("data", name).read_text())


def visit_game():
    return _load("visit_game.json")


def persistence_game():
    return _load("persistence_game.json")


def visit_templates():
    """Hand-written templates for ``visit_game``: nobody moves into ``v4``."""
    return AssumptionProfile([UcaTemplate(1, [("v3", "v4")]),
                              UcaTemplate(2, [("v2", "v4")])])


def persistence_templates():
    """Templates ``persistence_game`` synthesis is expected to end with."""
    return AssumptionProfile([
        UcaTemplate(1, [("v1", "v2"), ("v3", "v4")], [("v1", "v0")]),
        UcaTemplate(2, [], [("v0", "v0"), ("v0", "v3")]),
    ])
