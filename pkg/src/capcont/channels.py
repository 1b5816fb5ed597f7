"""Quantum channels: Kraus families, Choi matrices, isometric dilations.

A channel is stored as a list of d_out x d_in Kraus operators summing to the
identity under K^dag K (trace preservation); complete positivity is automatic
in this form. Conversions to and from the Choi matrix give canonical minimal
Kraus families, Stinespring dilation gives the complementary channel, and a
small zoo of named constructors covers the channels the harnesses exercise:
identity, constant, erasure, depolarizing, dephasing, and the capacity
discontinuity families (an n-level identity mixed with a sink map, in both
its classical and quantum parameterizations).

Conventions fixed here for reproducibility:
  * Choi matrix lives on in (x) out: J = sum_ij |i><j| (x) N(|i><j|).
  * The erasure flag is the highest output basis index.
  * All mixtures are taken at the level of sqrt-scaled Kraus unions.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import ArgumentError, CPViolationError, DimensionError, TPViolationError
from .linalg import D_MAX, TAU_HERM, TAU_PSD, TAU_TP, TAU_TR, DensityMatrix


class QuantumChannel:
    """Completely positive trace-preserving map in Kraus form.

    Parameters
    ----------
    kraus : sequence of (d_out, d_in) complex matrices
        Kraus operators; must satisfy sum K^dag K = I within TAU_TP.
    """

    def __init__(self, kraus: Sequence[np.ndarray]):
        ops = [linalg.as_matrix(k) for k in kraus]
        if not ops:
            raise ArgumentError("channel needs at least one Kraus operator")
        d_out, d_in = ops[0].shape
        if any(k.shape != (d_out, d_in) for k in ops):
            raise DimensionError("Kraus operators have mismatched shapes")
        if d_in * d_out > D_MAX:
            raise DimensionError(
                f"Choi dimension {d_in * d_out} exceeds D_MAX={D_MAX}"
            )
        acc = np.zeros((d_in, d_in), dtype=complex)
        for k in ops:
            acc += k.conj().T @ k
        res = float(np.max(np.abs(acc - np.eye(d_in))))
        if res > TAU_TP:
            raise TPViolationError(
                f"Kraus family is not trace-preserving: residual {res:.3e}"
            )
        for k in ops:
            k.setflags(write=False)
        self.kraus = tuple(ops)
        self.d_in = d_in
        self.d_out = d_out

    def __repr__(self) -> str:
        return f"QuantumChannel(d_in={self.d_in}, d_out={self.d_out}, n_kraus={len(self.kraus)})"

    def canonicalize(self) -> "QuantumChannel":
        """Minimal Kraus family via Choi eigendecomposition."""
        return from_choi(to_choi(self))


class ChoiMatrix:
    """Choi matrix J = sum_ij |i><j| (x) N(|i><j|) on in (x) out."""

    def __init__(self, matrix: np.ndarray, d_in: int, d_out: int):
        m = linalg.as_matrix(matrix)
        if m.shape != (d_in * d_out, d_in * d_out):
            raise DimensionError(
                f"Choi shape {m.shape} incompatible with d_in={d_in}, d_out={d_out}"
            )
        if linalg.herm_residual(m) > TAU_HERM * max(1.0, float(np.abs(m).max())):
            raise ArgumentError("Choi matrix must be Hermitian")
        self.matrix = (m + m.conj().T) / 2.0
        self.matrix.setflags(write=False)
        self.d_in = d_in
        self.d_out = d_out


class IsometricExtension:
    """Isometry V : in -> out (x) env with V^dag V = I."""

    def __init__(self, v: np.ndarray, d_out: int, d_env: int):
        v = linalg.as_matrix(v)
        d_in = v.shape[1]
        if v.shape[0] != d_out * d_env:
            raise DimensionError(
                f"isometry rows {v.shape[0]} != d_out*d_env = {d_out * d_env}"
            )
        res = float(np.max(np.abs(v.conj().T @ v - np.eye(d_in))))
        if res > TAU_TP:
            raise ArgumentError(f"V^dag V deviates from identity by {res:.3e}")
        self.v = v
        self.v.setflags(write=False)
        self.d_in = d_in
        self.d_out = d_out
        self.d_env = d_env


# ------------------------------------------------------------------ action


def apply(ch: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    """Channel action sum_k K rho K^dag."""
    if rho.d != ch.d_in:
        raise ArgumentError(f"state dimension {rho.d} != channel input {ch.d_in}")
    out = np.zeros((ch.d_out, ch.d_out), dtype=complex)
    for k in ch.kraus:
        out += k @ rho.matrix @ k.conj().T
    return DensityMatrix(out, (ch.d_out,))


def _apply_on_factor(
    kraus: Sequence[np.ndarray], mat: np.ndarray, dims: tuple[int, ...], f: int
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Apply one Kraus family to factor f of a multipartite matrix."""
    k = len(dims)
    d_out = kraus[0].shape[0]
    t = mat.reshape(dims + dims)
    new_dims = dims[:f] + (d_out,) + dims[f + 1 :]
    out = np.zeros(new_dims + new_dims, dtype=complex)
    for op in kraus:
        s = np.moveaxis(np.tensordot(op, t, axes=([1], [f])), 0, f)
        s = np.moveaxis(np.tensordot(s, op.conj(), axes=([k + f], [1])), -1, k + f)
        out += s
    d_tot = int(np.prod(new_dims))
    return out.reshape(d_tot, d_tot), new_dims


def apply_extended(
    ch: QuantumChannel, rho: DensityMatrix, channel_factors: Iterable[int]
) -> DensityMatrix:
    """Apply ch to the designated tensor factors, identity on the rest."""
    factors = sorted(set(int(f) for f in channel_factors))
    if not factors:
        return rho
    dims = rho.dims
    if factors[0] < 0 or factors[-1] >= len(dims):
        raise ArgumentError(f"factor indices {factors} out of range for dims {dims}")
    for f in factors:
        if dims[f] != ch.d_in:
            raise ArgumentError(
                f"factor {f} has dimension {dims[f]}, channel input is {ch.d_in}"
            )
    if int(np.prod(dims)) // np.prod([dims[f] for f in factors]) * ch.d_out ** len(
        factors
    ) > D_MAX:
        raise DimensionError("extended output dimension exceeds D_MAX")
    mat, cur = rho.matrix, dims
    for f in factors:
        mat, cur = _apply_on_factor(ch.kraus, mat, cur, f)
    return DensityMatrix(mat, cur)


# ------------------------------------------------------- Choi conversions


def to_choi(ch: QuantumChannel) -> ChoiMatrix:
    """Choi matrix of the channel on in (x) out."""
    n = ch.d_in * ch.d_out
    j = np.zeros((n, n), dtype=complex)
    for k in ch.kraus:
        w = k.T.reshape(-1)  # index (i, b) -> i*d_out + b
        j += np.outer(w, w.conj())
    return ChoiMatrix(j, ch.d_in, ch.d_out)


def from_choi(choi: ChoiMatrix) -> QuantumChannel:
    """Canonical Kraus family from a Choi matrix.

    Eigenvalues below TAU_PSD are discarded, so the family has at most
    d_in*d_out members. Raises CPViolationError when the matrix has an
    eigenvalue below -TAU_PSD and ArgumentError when the partial trace
    over the output is not the identity.
    """
    w, v = linalg.eigh(choi.matrix)
    if w[-1] < -TAU_PSD:
        raise CPViolationError(float(w[-1]))
    marg = linalg.partial_trace_matrix(
        choi.matrix, (choi.d_in, choi.d_out), keep=[0]
    )
    res = float(np.max(np.abs(marg - np.eye(choi.d_in))))
    if res > TAU_TP:
        raise ArgumentError(f"Choi output marginal deviates from identity by {res:.3e}")
    kraus = []
    for lam, vec in zip(w, v.T):
        if lam > TAU_PSD:
            kraus.append(np.sqrt(lam) * vec.reshape(choi.d_in, choi.d_out).T)
    if not kraus:  # zero map cannot be TP, but guard anyway
        raise ArgumentError("Choi matrix has no positive spectrum")
    return QuantumChannel(kraus)


# ----------------------------------------------------- dilation machinery


def stinespring(ch: QuantumChannel) -> IsometricExtension:
    """Isometry V = sum_k K_k (x) |k>_env, environment dimension = #Kraus."""
    d_env = len(ch.kraus)
    v = np.zeros((ch.d_out * d_env, ch.d_in), dtype=complex)
    for k, op in enumerate(ch.kraus):
        v += np.kron(op, linalg.basis_state(d_env, k).reshape(-1, 1))
    return IsometricExtension(v, ch.d_out, d_env)


def complementary(ch: QuantumChannel) -> QuantumChannel:
    """Channel to the environment of the Stinespring dilation.

    Output dimension equals the Kraus count of ch; the b-th complementary
    Kraus operator collects row b of every K_k.
    """
    d_env = len(ch.kraus)
    comp = []
    for b in range(ch.d_out):
        op = np.zeros((d_env, ch.d_in), dtype=complex)
        for k, kop in enumerate(ch.kraus):
            op[k, :] = kop[b, :]
        comp.append(op)
    return QuantumChannel(comp)


# -------------------------------------------------- structural operations


def mix(chs: Sequence[QuantumChannel], probs: Sequence[float]) -> QuantumChannel:
    """Convex mixture sum_i p_i ch_i as a sqrt(p)-scaled Kraus union."""
    if len(chs) != len(probs):
        raise ArgumentError("channel and probability lists differ in length")
    p = np.asarray(probs, dtype=float)
    if p.size == 0 or np.any(p < -TAU_TR) or abs(p.sum() - 1.0) > TAU_TR:
        raise ArgumentError(f"probabilities must be nonnegative and sum to 1, got {probs}")
    dims = {(c.d_in, c.d_out) for c in chs}
    if len(dims) != 1:
        raise ArgumentError(f"mixture components have mismatched dimensions {dims}")
    kraus = []
    for c, pi in zip(chs, p):
        if pi > 0.0:
            kraus.extend(np.sqrt(pi) * k for k in c.kraus)
    return QuantumChannel(kraus)


def tensor_power(ch: QuantumChannel, n: int) -> QuantumChannel:
    """n-fold parallel application ch^(x)n."""
    if n < 1:
        raise ArgumentError(f"tensor power needs n >= 1, got {n}")
    if ch.d_in**n > D_MAX or ch.d_out**n > D_MAX:
        raise DimensionError(f"tensor power dimension exceeds D_MAX={D_MAX}")
    if n == 1:
        return ch
    kraus = []
    for combo in itertools.product(ch.kraus, repeat=n):
        op = combo[0]
        for k in combo[1:]:
            op = np.kron(op, k)
        kraus.append(op)
    return QuantumChannel(kraus)


# ------------------------------------------------------ named constructors


def identity(d: int) -> QuantumChannel:
    """Identity channel on dimension d."""
    if d < 1:
        raise ArgumentError(f"dimension must be positive, got {d}")
    return QuantumChannel([np.eye(d, dtype=complex)])


def constant_channel(d: int) -> QuantumChannel:
    """Map every state on dimension d to |0><0|."""
    if d < 1:
        raise ArgumentError(f"dimension must be positive, got {d}")
    kraus = [np.outer(linalg.basis_state(d, 0), linalg.basis_state(d, j)) for j in range(d)]
    return QuantumChannel(kraus)


def erasure(d: int, p: float) -> QuantumChannel:
    """Erasure channel: keep the input with probability 1-p, else flag.

    Input dimension d, output dimension d+1; the flag state is the highest
    output basis index d. rho maps to (1-p) rho (+) p Tr(rho) |d><d|.
    """
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"erasure probability must be in [0, 1], got {p}")
    if d < 1:
        raise ArgumentError(f"dimension must be positive, got {d}")
    embed = np.zeros((d + 1, d), dtype=complex)
    embed[:d, :] = np.eye(d)
    kraus = []
    if p < 1.0:
        kraus.append(np.sqrt(1.0 - p) * embed)
    if p > 0.0:
        flag = linalg.basis_state(d + 1, d)
        kraus.extend(
            np.sqrt(p) * np.outer(flag, linalg.basis_state(d, i)) for i in range(d)
        )
    return QuantumChannel(kraus)


def depolarizing(d: int, p: float) -> QuantumChannel:
    """rho -> (1-p) rho + p I/d, built from its Choi matrix."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"depolarizing parameter must be in [0, 1], got {p}")
    if d < 1:
        raise ArgumentError(f"dimension must be positive, got {d}")
    phi = linalg.maximally_entangled(d).density().matrix
    j = (1.0 - p) * d * phi + (p / d) * np.eye(d * d)
    return from_choi(ChoiMatrix(j, d, d))


def dephasing(p: float) -> QuantumChannel:
    """Qubit phase flip rho -> (1-p) rho + p Z rho Z."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"dephasing parameter must be in [0, 1], got {p}")
    z = np.diag([1.0, -1.0]).astype(complex)
    kraus = []
    if p < 1.0:
        kraus.append(np.sqrt(1.0 - p) * np.eye(2, dtype=complex))
    if p > 0.0:
        kraus.append(np.sqrt(p) * z)
    return QuantumChannel(kraus)


def _sink_channel(n: int) -> QuantumChannel:
    """Map every n-level state to the sink |n><n| in dimension n+1."""
    return erasure(n, 1.0)


def _embedded_identity(n: int) -> QuantumChannel:
    """Identity on n levels embedded in an (n+1)-dim output."""
    return erasure(n, 0.0)


def truncated_classical_example(n: int) -> QuantumChannel:
    """n-level member of the family whose classical capacity jumps at its limit.

    Mixes the sink map with the embedded n-level identity at weight
    1/log2(n) on the identity; equals erasure(n, 1 - 1/log2(n)) with the
    sink as the flag. The limit of the family is the pure sink map, whose
    classical capacity is 0, while every member has capacity exactly 1.
    """
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    w = 1.0 / np.log2(n)
    return mix([_sink_channel(n), _embedded_identity(n)], [1.0 - w, w])


def truncated_quantum_example(n: int) -> QuantumChannel:
    """n-level member of the family whose quantum capacity jumps at its limit.

    Mixes the 50% erasure-to-sink map with the embedded n-level identity at
    weight 1/log2(n) on the identity; equals erasure(n, (1 - 1/log2(n))/2).
    The limit is the 50% erasure channel with quantum capacity 0, while
    every member has coherent information exactly 1.
    """
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    w = 1.0 / np.log2(n)
    return mix([erasure(n, 0.5), _embedded_identity(n)], [1.0 - w, w])


# ---------------------------------------------------------- serialization


def channel_to_dict(ch: QuantumChannel) -> dict:
    """JSON-ready dict: {"d_in", "d_out", "kraus"} with row-major [re, im] pairs."""
    kraus = [
        [[float(z.real), float(z.imag)] for z in op.reshape(-1)] for op in ch.kraus
    ]
    return {"d_in": ch.d_in, "d_out": ch.d_out, "kraus": kraus}


def channel_from_dict(data: dict) -> QuantumChannel:
    """Inverse of channel_to_dict, validating shape and trace preservation."""
    try:
        d_in = int(data["d_in"])
        d_out = int(data["d_out"])
        raw = data["kraus"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ArgumentError(f"malformed channel dict: {exc}") from exc
    if d_in < 1 or d_out < 1 or not isinstance(raw, list) or not raw:
        raise ArgumentError("channel dict needs positive dims and a nonempty kraus list")
    ops = []
    for entry in raw:
        flat = np.asarray(entry, dtype=float)
        if flat.shape != (d_in * d_out, 2):
            raise ArgumentError(
                f"Kraus entry has shape {flat.shape}, expected ({d_in * d_out}, 2)"
            )
        ops.append((flat[:, 0] + 1j * flat[:, 1]).reshape(d_out, d_in))
    return QuantumChannel(ops)
