"""
Refining templates step by step
===============================

Both players want the play to settle down eventually, player 1 in ``v5``
and player 2 in ``v4`` or ``v5``. The templates needed for that are found
over three rounds: the first round rules out obviously bad edges, the
second makes player 2 stop bouncing through ``v3``, the third confirms
that everyone can now win on their own.
"""

from gwse import o_compute_ge
from gwse.fixtures import persistence_game


def show(t):
    def fmt(edges):
        return ", ".join(f"{u}->{v}" for u, v in sorted(edges)) or "-"
    return f"unsafe: {fmt(t.unsafe)}   colive: {fmt(t.colive)}"


game = persistence_game()
profile, trace = o_compute_ge(game)

for it in trace:
    won = ", ".join(f"P{i} {'wins' if w else 'loses'}" for i, w in it.winning.items())
    print(f"round {it.number}: {won} -> {it.outcome}")
    if it.after is not None:
        for i in game.players:
            print(f"   player {i}  {show(it.after[i])}")

# the winning regions shrink or grow as templates change; here is the last one
last = trace[-1]
for i in game.players:
    print(f"player {i} wins its specification from {sorted(last.regions[i])}")
