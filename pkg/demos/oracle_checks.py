"""
Checking profiles by brute force
================================

The oracle never calls the solver. It enumerates every combination of
vertices and template edges a play can repeat forever, which is enough to
decide any boolean combination of parity and edge template conditions.
"""

from gwse import SpecProfile, UcaTemplate, verify_gwse
from gwse.fixtures import persistence_game, persistence_templates
from gwse.oracle import (Parity, enumerate_recurrences, implies, language_equivalent,
                         template_formula)
from gwse.templates import AssumptionProfile

game = persistence_game()
g = game.graph

cases = enumerate_recurrences(g, g.edges)
print(f"{len(cases)} recurrence cases, for example:")
for c in sorted(cases, key=lambda c: len(c.edges))[:4]:
    print("  loop", sorted(c.edges))

# assuming player 2 behaves is weaker than the goal itself
profile = SpecProfile(game, persistence_templates())
psi2 = template_formula(profile.own(2))
phi1 = Parity(game.specs[1])
same, witness = language_equivalent(game, implies(psi2, phi1), phi1)
print("\n(psi_2 -> phi_1) equivalent to phi_1:", same, " witness:", witness)

# the synthesized profile passes; weakening player 2's template breaks it
print("\nsynthesized profile passes:", verify_gwse(game, profile).ok)
weaker = AssumptionProfile([profile.own(1), UcaTemplate(2, [], [("v0", "v0")])])
report = verify_gwse(game, SpecProfile(game, weaker))
print("without colive v0->v3:", "pass" if report.ok else "fail",
      "realizable:", report.realizable)
