"""
Search at the Grover point
==========================

With both coin phases at π the walk coin is the Grover diffusion coin and the
marking coin is -I: the textbook random-walk search. The success probability
approaches 1/2 as the hypercube grows.
"""

import math

from qrws import CoinParams, WalkConfig, dense_success_probability, iteration_count, qrws_run

# %%
# One run per dimension. ``k`` follows ceil(π/2 sqrt(2^(m-1))).
for m in range(2, 9):
    cfg = WalkConfig(m, CoinParams(math.pi, math.pi, 0.0, m))
    res = qrws_run(cfg)
    print(f"m={m}  k={iteration_count(m):3d}  p={res.success_probability:.6f}")

# %%
# The fast simulator against an explicitly assembled one-step matrix.
cfg = WalkConfig(4, CoinParams(math.pi, math.pi, 0.0, 4))
print("fast :", qrws_run(cfg).success_probability)
print("dense:", dense_success_probability(cfg))

# %%
# With identity walk coin there is no walk and the marked node stays at the
# uniform 1/16.
print("no walk:", qrws_run(WalkConfig(4, CoinParams(0.0, 0.0, 0.0, 4))).success_probability)
