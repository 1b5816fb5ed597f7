"""
Diamond distance with certificates
==================================

"""

from capcont import (
    HermitianPreservingMap,
    bell_probe_value,
    depolarizing,
    diamond_distance,
    diamond_lower_probe,
    identity,
)

# The diamond distance between the identity and the depolarizing channel
# has the closed form 3p/2 on qubits, attained by a maximally entangled
# probe.  The SDP reports a certified upper bound (value) and a certified
# lower bound (dual_value); their gap is the accuracy guarantee.
for p in (0.1, 0.3, 0.5):
    res = diamond_distance(identity(2), depolarizing(2, p))
    print(
        f"p={p}: value={res.value:.9f}  closed form={1.5 * p:.9f}  "
        f"gap={res.value - res.dual_value:.2e}  status={res.status}"
    )

# Pure-state probes always give lower bounds.  The Bell probe is optimal
# here; random probes approach it from below.
the_map = HermitianPreservingMap.difference(identity(2), depolarizing(2, 0.3))
print("bell probe:", round(bell_probe_value(the_map), 9))
print("best of 20 random probes:", round(diamond_lower_probe(the_map, 20, seed=1), 9))

# The norm is homogeneous: scaling the map scales the value.
res = diamond_distance(identity(2), depolarizing(2, 0.3))
scaled = the_map.scaled(2.5)
from capcont import diamond_norm

print("homogeneity check:", round(diamond_norm(scaled).value / res.value, 9))
