"""State and channel distances.

Trace distance in the full 1-norm convention (with the halved variant as a
separate accessor) and the diamond norm of Hermiticity-preserving maps,
computed by the certified interior-point program in the sdp module and
cross-checked by Haar-probe lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sdp
from .channels import ChoiMatrix, QuantumChannel, to_choi
from .errors import ArgumentError
from .linalg import DensityMatrix, PureState, maximally_entangled, trace_norm
from .sampling import haar_state, rng_for

TAU_SDP = 1e-6  # certified-accuracy contract for diamond-norm values


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """||rho - sigma||_1, the full (unhalved) trace norm of the difference."""
    if rho.d != sigma.d:
        raise ArgumentError(f"dimension mismatch {rho.d} != {sigma.d}")
    return trace_norm(rho.matrix - sigma.matrix)


def trace_distance_halved(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """(1/2)||rho - sigma||_1."""
    return 0.5 * trace_distance(rho, sigma)


class HermitianPreservingMap:
    """Linear map with a Hermitian Choi matrix, e.g. a channel difference."""

    def __init__(self, choi: ChoiMatrix):
        self.choi = choi
        self.d_in = choi.d_in
        self.d_out = choi.d_out

    @classmethod
    def difference(cls, a: QuantumChannel, b: QuantumChannel) -> "HermitianPreservingMap":
        if (a.d_in, a.d_out) != (b.d_in, b.d_out):
            raise ArgumentError("channel difference needs matching dimensions")
        j = to_choi(a).matrix - to_choi(b).matrix
        return cls(ChoiMatrix(j, a.d_in, a.d_out))

    @classmethod
    def from_channel(cls, a: QuantumChannel) -> "HermitianPreservingMap":
        return cls(to_choi(a))

    def scaled(self, c: float) -> "HermitianPreservingMap":
        return HermitianPreservingMap(
            ChoiMatrix(float(c) * self.choi.matrix, self.d_in, self.d_out)
        )

    def signed_kraus(self) -> list[tuple[float, np.ndarray]]:
        """Decomposition map(rho) = sum_k lam_k K_k rho K_k^dag, lam real."""
        w, v = np.linalg.eigh(self.choi.matrix)
        out = []
        for lam, vec in zip(w, v.T):
            if abs(lam) > 1e-14:
                out.append((float(lam), vec.reshape(self.d_in, self.d_out).T))
        return out


@dataclass
class SdpResult:
    value: float        # certified upper bound; the reported norm
    dual_value: float   # certified lower bound from the feasible primal point
    iterations: int
    status: str         # optimal | max-iters | infeasible
    rel_gap: float

    def certified(self, tol: float = TAU_SDP) -> bool:
        return self.status == "optimal" and abs(self.value - self.dual_value) <= tol * (
            1.0 + abs(self.value)
        )


def diamond_norm(
    the_map: HermitianPreservingMap,
    max_iters: int = 200,
    backend: str = "auto",
) -> SdpResult:
    """Diamond norm of a Hermiticity-preserving map, with a certified gap.

    The exact-zero map short-circuits to 0 so that equal channels compare
    at machine precision rather than solver precision.
    """
    j = the_map.choi.matrix
    if float(np.max(np.abs(j))) == 0.0:
        return SdpResult(0.0, 0.0, 0, "optimal", 0.0)
    sol = sdp.solve_diamond(
        j, the_map.d_in, the_map.d_out, max_iters=max_iters, backend=backend
    )
    result = SdpResult(
        value=sol.value,
        dual_value=sol.dual_value,
        iterations=sol.iterations,
        status=sol.status,
        rel_gap=sol.rel_gap,
    )
    if result.status == "optimal" and not result.certified():
        result.status = "max-iters"  # keep the status honest about the gap
    return result


def diamond_distance(a: QuantumChannel, b: QuantumChannel, **kwargs) -> SdpResult:
    """diamond_norm(a - b)."""
    return diamond_norm(HermitianPreservingMap.difference(a, b), **kwargs)


def probe_value(the_map: HermitianPreservingMap, psi: PureState) -> float:
    """||(map (x) I)(psi)||_1 for a pure probe on in (x) ref.

    Always a lower bound on the diamond norm.
    """
    d_in = the_map.d_in
    if len(psi.dims) != 2 or psi.dims[0] != d_in:
        raise ArgumentError(f"probe needs dims (d_in, d_ref), got {psi.dims}")
    d_ref = psi.dims[1]
    mat = psi.vector.reshape(d_in, d_ref)  # amplitude matrix of the probe
    out = np.zeros((the_map.d_out * d_ref,) * 2, dtype=complex)
    for lam, k in the_map.signed_kraus():
        w = (k @ mat).reshape(-1)  # (K (x) I) |psi>
        out += lam * np.outer(w, w.conj())
    return float(np.sum(np.abs(np.linalg.eigvalsh(out))))


def diamond_lower_probe(the_map: HermitianPreservingMap, trials: int, seed: int) -> float:
    """Best of `trials` Haar-random pure probes with a full-size reference."""
    if trials < 1:
        raise ArgumentError(f"trials must be >= 1, got {trials}")
    d_in = the_map.d_in
    best = 0.0
    for t in range(trials):
        psi = haar_state(d_in * d_in, rng_for(seed, t), dims=(d_in, d_in))
        best = max(best, probe_value(the_map, psi))
    return best


def bell_probe_value(the_map: HermitianPreservingMap) -> float:
    """Probe value at the maximally entangled input, a common tight case."""
    return probe_value(the_map, maximally_entangled(the_map.d_in))
