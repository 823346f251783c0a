"""
Environment players and coalitions
==================================

An environment is just one more player whose objective is always met.
Its template therefore never changes, and it never promises anything.
Dropping a player's objective (a coalition of the others) works the same
way, which means that player is free to spoil everybody else's plans.
"""

from gwse import coalition_game, o_compute_ge, verify_gwse, with_environment
from gwse.fixtures import visit_game

game = visit_game()


def summary(g):
    profile, trace = o_compute_ge(g)
    print(f"  {g.k} players, {len(trace)} rounds, result:",
          "profile" if profile is not None else "FALSE")
    last = trace[-1].after or trace[-1].before
    for i in g.players:
        print(f"  player {i}: unsafe {sorted(last[i].unsafe)}")
    return profile


# the environment owns v4, where nothing can happen anyway
print("environment on v4")
g = with_environment(game, ["v4"])
p = summary(g)
print("  verified:", verify_gwse(g, p).ok)

# the environment owns v0: it can avoid v2 forever, so player 2 would need
# player 1 to visit v2 now and then, which no edge template can express
print("\nenvironment on v0")
summary(with_environment(game, ["v0"]))

# player 2 gives up its objective, so nothing keeps it away from v4
print("\ncoalition {1}")
summary(coalition_game(game, [1]))
