"""
Assisted-capacity arithmetic from mutual simulation
===================================================

"""

import numpy as np

from capcont import (
    MixingGeometry,
    colinear_rescale,
    continuity_delta,
    erasure_q2,
    erasure_qb_bounds,
    mutual_gap_bound,
    simulation_upper_bound,
)

# If channel N simulates channel M after mixing weight p1 of a capacity
# ceiling into it, M's two-way rate is capped by an interpolation toward
# the ceiling:
print("simulation ceiling:", simulation_upper_bound(0.6, p1=0.2, log_d=1.0))

# Two channels that simulate each other pin their capacities together;
# the gap bound is the smaller of the two one-sided premiums.
print("mutual gap:", mutual_gap_bound(0.5, 0.7, p1=0.2, p2=0.1, log_d=1.0))

# Shrinking the separation shrinks the mixing weights: q1 linearly, q2
# through a convex rearrangement that keeps it below 2 p2 delta/Delta.
geom = MixingGeometry(p1=0.5, p2=0.5, Delta=1.0, delta=0.5, log_d=1.0)
q1, q2 = colinear_rescale(geom)
print("rescaled weights at half separation:", round(q1, 6), round(q2, 6))

# Composing the pieces: pick the separation radius from the target eps and
# the resulting gap bound stays below eps for every admissible weight.
eps, log_d = 0.05, 2.0
delta = continuity_delta(eps, Delta=1.0, log_d=log_d)
print("separation radius for eps=0.05:", delta)
worst = 0.0
for p1 in np.linspace(0.01, 1.0, 25):
    for p2 in np.linspace(0.01, 0.5, 25):
        g = MixingGeometry(p1=float(p1), p2=float(p2), Delta=1.0, delta=delta, log_d=log_d)
        q1, q2 = colinear_rescale(g)
        worst = max(worst, min(q1, q2) * log_d)
print("worst composed gap bound over the weight grid:", round(worst, 6), "<= eps")

# The erasure channel is the canonical anchor: its two-way rate is 1 - p
# exactly, and the backward-assisted rate sits between the unassisted
# max(1 - 2p, 0) and the two-way value.
print("\nerasure rates:")
for p in (0.0, 0.25, 0.5, 0.75, 1.0):
    lo, hi = erasure_qb_bounds(p)
    print(f"  p={p}: q2={erasure_q2(p):.3f}  bracket=[{lo:.3f}, {hi:.3f}]")
