"""
Single-letter capacity proxies by gradient ascent
=================================================

"""

from capcont import (
    Ensemble,
    constant_channel,
    erasure,
    holevo_information,
    max_coherent_information,
    max_holevo,
    truncated_classical_example,
)

# Quantum capacity proxy of the erasure channel: the single-letter
# coherent information is max(1 - 2p, 0) on qubits, hitting zero exactly
# at p = 1/2.  The maximizer climbs the purified-input sphere.
print("coherent information of erasure(2, p):")
for p in (0.0, 0.1, 0.25, 0.4, 0.5):
    rep = max_coherent_information(erasure(2, p), restarts=4, iters=400, seed=0)
    print(f"  p={p}: {rep.best_value:.6f}  (closed form {max(1 - 2 * p, 0):.6f})")

# Classical proxy: a channel that ignores its input carries nothing, and
# the ensemble maximizer agrees to solver precision.
rep = max_holevo(constant_channel(2), ensemble_size=2, restarts=4, iters=200, seed=0)
print("holevo of a constant channel:", round(rep.best_value, 9))

# The high-truncation family transmits one bit regardless of truncation
# level: the uniform basis ensemble on n levels achieves I(X;B) = 1
# exactly because the surviving fraction 1/log n of a log n - bit input
# is one bit.
for n in (4, 8, 16):
    value = holevo_information(
        truncated_classical_example(n), Ensemble.uniform_basis(n)
    )
    print(f"uniform-basis information through truncation at n={n}:", round(value, 9))
