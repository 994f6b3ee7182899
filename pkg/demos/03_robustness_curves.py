"""
Robustness along a phase relation
=================================

Tying ζ to φ by ζ = -2φ + π + α sin 2φ keeps the walk on the high-probability
ridge of the landscape. The plateau width (measure of φ with p ≥ 0.9 p_max)
quantifies how forgiving the circuit is to errors in φ.
"""

import math

from qrws import PhaseRelation, Relation, optimize_alpha, probability_curve, robustness_width

relations = {
    "zeta = pi": PhaseRelation(Relation.CONSTANT_PI),
    "linear (alpha = 0)": PhaseRelation(Relation.EQ6, 0.0),
    "alpha = -1/(2 pi)": PhaseRelation(Relation.EQ6, -1 / (2 * math.pi)),
}

# %%
for m in (4, 7):
    print(f"m = {m}")
    for name, rel in relations.items():
        rep = robustness_width(probability_curve(m, 0.0, rel, 512))
        print(f"  {name:20s} width={rep.width:.4f}  p_max={rep.p_max:.4f}")

# %%
# Best α by scan plus golden-section refinement.
for m in (4, 7):
    rep = optimize_alpha(m)
    print(f"m={m}: alpha*={rep.alpha:+.4f} width={rep.width:.4f}")
