"""
Cooperation obligations in a visiting game
===========================================

Two players each want to see their own vertex infinitely often. Neither
can do it alone, but both lose for sure once the play drops into ``v4``.
Synthesis finds the least each player has to promise: never move to ``v4``.
"""

from gwse import extract_strategy, o_compute_ge, verify_gwse
from gwse.fixtures import visit_game
from gwse.oracle import check_wse, outcome

game = visit_game()
print("vertices:", game.graph.vertices)
print("player 1 priorities:", game.specs[1])

# synthesize the specification profile
profile, trace = o_compute_ge(game)
print(f"\nfinished after {len(trace)} iterations")
for i in game.players:
    print(f"player {i}:", profile.ltl(i))

# every player picks a strategy for its own specification, independently
strategies = {i: extract_strategy(game, profile, i) for i in game.players}
for i, s in strategies.items():
    print(f"\nstrategy of player {i} (memory {s.memory}):")
    for (m, v), w in sorted(s.moves.items()):
        print(f"  memory {m}, at {v} go to {w}")

# the resulting play, and a check that the profile is a secure equilibrium
print("\nplay:", outcome(game, strategies))
print("winning secure equilibrium:", check_wse(game, strategies).ok)

# brute force confirmation of the three properties of the profile
report = verify_gwse(game, profile)
print("\ngeneral:", report.general)
print("realizable:", report.realizable)
print("secure at memory bound", report.memory_bound, ":", report.secure)
