"""
Phase landscape over (φ, ζ)
===========================

Success probability over the whole torus of walk-coin phases, on a lattice
and by seeded Monte Carlo. The high-probability band narrows as the coin
dimension grows.
"""

import numpy as np

from qrws import TAU, landscape_grid, sample_landscape

# %%
# Lattice sweeps for m = 4 and m = 7.
for m in (4, 7):
    phi, zeta, p = landscape_grid(33, 33, m)
    share = np.mean(p >= 0.9 * p.max())
    print(f"m={m}: max p={p.max():.4f}; {100 * share:.1f}% of cells within 90% of the max")

# %%
# Monte Carlo with a fixed seed is reproducible sample by sample.
samples = sample_landscape(4, n_samples=2000, seed=1)
best = max(samples, key=lambda s: s.p)
print(f"best random sample: phi={best.phi:.3f} zeta={best.zeta:.3f} p={best.p:.4f}")

# %%
# Plot if matplotlib is around; the data itself is plain numpy.
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for ax, m in zip(axes, (4, 7)):
        _, _, p = landscape_grid(65, 65, m)
        ax.imshow(p.T, origin="lower", extent=(0, TAU, 0, TAU), cmap="Greys")
        ax.set(title=f"m = {m}", xlabel="phi", ylabel="zeta")
    fig.savefig("phase_landscape.png", dpi=120)
    print("wrote phase_landscape.png")
