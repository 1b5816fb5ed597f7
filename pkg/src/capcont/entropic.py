"""Entropic and information quantities, all in bits.

Von Neumann entropy with eigenvalue clipping, binary entropy, conditional
entropy and mutual information across a declared bipartition, and the three
channel-information functionals evaluated at fixed inputs: coherent
information of a joint input state, Holevo information of an ensemble, and
private information of an ensemble (Holevo to the output minus Holevo to
the environment).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import channels, linalg
from .channels import QuantumChannel
from .errors import ArgumentError
from .linalg import DensityMatrix, TAU_TR

TAU_ENT = 1e-7  # slack for entropy inequalities


def entropy_of_spectrum(w: np.ndarray) -> float:
    """Shannon entropy in bits of a clipped eigenvalue vector."""
    p = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def entropy_of_matrix(mat: np.ndarray) -> float:
    """Entropy of a Hermitian matrix treated as a state (no validation)."""
    return entropy_of_spectrum(np.linalg.eigvalsh((mat + mat.conj().T) / 2.0))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, via the clipped spectrum."""
    return entropy_of_matrix(rho.matrix)


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"binary entropy argument must be in [0, 1], got {p}")
    return entropy_of_spectrum(np.array([p, 1.0 - p]))


def _split_dims(rho: DensityMatrix, split: int) -> tuple[int, int]:
    if not 1 <= split < len(rho.dims):
        raise ArgumentError(
            f"split {split} invalid for {len(rho.dims)} tensor factors"
        )
    d_a = int(np.prod(rho.dims[:split]))
    d_b = int(np.prod(rho.dims[split:]))
    return d_a, d_b


def conditional_entropy(rho: DensityMatrix, split: int = 1) -> float:
    """S(A|B) = S(AB) - S(B); A is the first `split` tensor factors."""
    d_a, d_b = _split_dims(rho, split)
    s_ab = entropy_of_matrix(rho.matrix)
    s_b = entropy_of_matrix(linalg.partial_trace_matrix(rho.matrix, (d_a, d_b), keep=[1]))
    return s_ab - s_b


def mutual_information(rho: DensityMatrix, split: int = 1) -> float:
    """I(A;B) = S(A) + S(B) - S(AB); A is the first `split` factors."""
    d_a, d_b = _split_dims(rho, split)
    s_a = entropy_of_matrix(linalg.partial_trace_matrix(rho.matrix, (d_a, d_b), keep=[0]))
    s_b = entropy_of_matrix(linalg.partial_trace_matrix(rho.matrix, (d_a, d_b), keep=[1]))
    return s_a + s_b - entropy_of_matrix(rho.matrix)


def coherent_information(ch: QuantumChannel, rho: DensityMatrix) -> float:
    """S(B) - S(AB) on (I (x) ch)(rho) for a two-factor input rho on A (x) A'."""
    if len(rho.dims) != 2:
        raise ArgumentError(f"input must have two tensor factors, got dims {rho.dims}")
    if rho.dims[1] != ch.d_in:
        raise ArgumentError(
            f"second factor dimension {rho.dims[1]} != channel input {ch.d_in}"
        )
    omega = channels.apply_extended(ch, rho, {1})
    s_b = entropy_of_matrix(
        linalg.partial_trace_matrix(omega.matrix, omega.dims, keep=[1])
    )
    return s_b - entropy_of_matrix(omega.matrix)


class Ensemble:
    """Probability-weighted list of states on a common dimension."""

    def __init__(self, items: Sequence[tuple[float, DensityMatrix]]):
        items = [(float(p), s) for p, s in items]
        if not items:
            raise ArgumentError("ensemble must be nonempty")
        probs = np.array([p for p, _ in items])
        if np.any(probs < -TAU_TR) or abs(probs.sum() - 1.0) > TAU_TR:
            raise ArgumentError("ensemble probabilities must be >= 0 and sum to 1")
        d = items[0][1].d
        if any(s.d != d for _, s in items):
            raise ArgumentError("ensemble states live on different dimensions")
        self.items = tuple(items)
        self.d = d

    @classmethod
    def uniform_basis(cls, d: int) -> "Ensemble":
        """Uniform ensemble of the d computational basis states."""
        return cls(
            [
                (1.0 / d, DensityMatrix.from_pure(linalg.basis_state(d, i)))
                for i in range(d)
            ]
        )


def holevo_information(ch: QuantumChannel, ens: Ensemble) -> float:
    """I(X;B) = S(sum_x p_x ch(phi_x)) - sum_x p_x S(ch(phi_x))."""
    if ens.d != ch.d_in:
        raise ArgumentError(f"ensemble dimension {ens.d} != channel input {ch.d_in}")
    avg = np.zeros((ch.d_out, ch.d_out), dtype=complex)
    mean_s = 0.0
    for p, state in ens.items:
        if p <= 0.0:
            continue
        out = channels.apply(ch, state)
        avg += p * out.matrix
        mean_s += p * entropy_of_matrix(out.matrix)
    return entropy_of_matrix(avg) - mean_s


def private_information(ch: QuantumChannel, ens: Ensemble) -> float:
    """I(X;B) - I(X;E), with E the canonical dilation environment."""
    return holevo_information(ch, ens) - holevo_information(
        channels.complementary(ch), ens
    )
