"""Seeded random generators for states and channels.

All harnesses draw through these helpers so that a single integer seed
determines every trial. Independent streams for trial k come from
SeedSequence spawn keys, which keeps results stable no matter how trials
are scheduled.
"""

from __future__ import annotations

import numpy as np

from .channels import QuantumChannel
from .errors import ArgumentError
from .linalg import DensityMatrix, PureState


def rng_for(seed: int, *branch: int) -> np.random.Generator:
    """Generator for a (seed, branch...) stream, stable under scheduling."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(b) for b in branch)))


def haar_state(d: int, rng: np.random.Generator, dims=None) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(v / np.linalg.norm(v), dims if dims is not None else (d,))


def random_density_matrix(
    d: int, rng: np.random.Generator, rank: int | None = None, dims=None
) -> DensityMatrix:
    """Wishart-style random state of the given rank (full rank by default)."""
    r = d if rank is None else int(rank)
    if not 1 <= r <= d:
        raise ArgumentError(f"rank {r} out of range for dimension {d}")
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real, dims if dims is not None else (d,))


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2.0


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_channel(
    d_in: int, d_out: int, rng: np.random.Generator, kraus_count: int | None = None
) -> QuantumChannel:
    """Random channel from a Haar-random isometry into out (x) env.

    kraus_count fixes the environment dimension; the default d_in*d_out
    gives a generic full-rank Choi matrix.
    """
    k = d_in * d_out if kraus_count is None else int(kraus_count)
    if k < 1:
        raise ArgumentError(f"kraus_count must be positive, got {k}")
    g = rng.normal(size=(d_out * k, d_in)) + 1j * rng.normal(size=(d_out * k, d_in))
    q, _ = np.linalg.qr(g)  # columns orthonormal: an isometry into out (x) env
    v = q.reshape(d_out, k, d_in)
    return QuantumChannel([v[:, j, :] for j in range(k)])
