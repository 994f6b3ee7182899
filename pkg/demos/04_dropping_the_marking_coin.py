"""
Dropping the marking coin
=========================

Only the difference Δ = ζ - ω between walk-coin and marking-coin phases
affects the outcome. Choosing ω = π turns the marking coin into the identity,
so it can be left out of the circuit, provided ζ follows ζ = -2φ + α sin 2φ.
"""

import math

import numpy as np

from qrws import (
    TAU,
    Circuit,
    PhaseRelation,
    Relation,
    check_phase_equivalence,
    landscape_grid,
    success_probabilities,
)

# %%
# Random phase triples: p(φ, ζ, ω) against p(φ, ζ - ω, 0).
for m in (2, 4, 7):
    print(f"m={m}: max deviation {check_phase_equivalence(m, 50, seed=0):.2e}")

# %%
# A marking phase slides the whole landscape along ζ.
_, _, base = landscape_grid(32, 32, 4, 0.0)
_, _, moved = landscape_grid(32, 32, 4, math.pi / 2)
print("shift by pi/2 reproduces the landscape:", np.abs(moved - np.roll(base, 8, axis=1)).max())

# %%
# Reduced circuit on the ω = π relation vs the standard circuit.
phi = np.linspace(0, TAU, 64, endpoint=False)
alpha = -1 / (2 * math.pi)
std = success_probabilities(7, phi, PhaseRelation(Relation.EQ6, alpha)(phi), 0.0, Circuit.STANDARD)
alt = success_probabilities(7, phi, PhaseRelation(Relation.EQ14, alpha)(phi), 0.0, Circuit.ALTERNATIVE)
print("reduced vs standard circuit:", np.abs(std - alt).max())
