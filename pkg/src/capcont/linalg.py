"""Dense complex linear algebra substrate.

Tensor products, partial traces, Hermitian eigendecomposition, purification,
and the trace norm, together with the two state types the rest of the
package passes around. Everything is plain dense numpy; dimensions stay at
desk scale by construction (D_MAX guards Kronecker blowup).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import numpy.linalg as npl

from .errors import ArgumentError, DimensionError, NumericError

# Numerical tolerances. Double precision leaves ample headroom at d <= 512.
TAU_HERM = 1e-9   # Hermiticity residual
TAU_TR = 1e-9     # trace / normalization residual
TAU_PSD = 1e-8    # admissible negative eigenvalue magnitude
TAU_EIG = 1e-8    # eigendecomposition reconstruction residual
TAU_TP = 1e-8     # trace-preservation residual for channels
D_MAX = 4096      # largest matrix dimension any operation may produce


def as_matrix(x: object) -> np.ndarray:
    """Coerce to a 2-D complex ndarray."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise ArgumentError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ArgumentError("matrix has non-finite entries")
    return m


def herm_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a dimension guard."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] * b.shape[0] > D_MAX or a.shape[1] * b.shape[1] > D_MAX:
        raise DimensionError(
            f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds D_MAX={D_MAX}"
        )
    return np.kron(a, b)


def basis_state(d: int, i: int) -> np.ndarray:
    """Computational basis vector |i> in dimension d."""
    if not 0 <= i < d:
        raise ArgumentError(f"basis index {i} out of range for dimension {d}")
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


class PureState:
    """Unit vector with attached tensor-factor dimensions."""

    def __init__(self, vector: np.ndarray, dims: Sequence[int]):
        v = np.asarray(vector, dtype=complex).reshape(-1)
        dims = tuple(int(d) for d in dims)
        if int(np.prod(dims)) != v.size:
            raise DimensionError(f"dims {dims} do not multiply to vector size {v.size}")
        nrm = npl.norm(v)
        if abs(nrm - 1.0) > 1e-6:
            raise ArgumentError(f"vector norm {nrm} is not 1")
        if abs(nrm - 1.0) > TAU_TR:
            v = v / nrm
        self.vector = v
        self.dims = dims
        self.vector.setflags(write=False)

    @property
    def d(self) -> int:
        return self.vector.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.vector, self.vector.conj()), self.dims)


class DensityMatrix:
    """Unit-trace PSD matrix with attached tensor-factor dimensions."""

    def __init__(self, matrix: np.ndarray, dims: Sequence[int] | None = None):
        m = as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        d = m.shape[0]
        dims = (d,) if dims is None else tuple(int(x) for x in dims)
        if int(np.prod(dims)) != d:
            raise DimensionError(f"dims {dims} do not multiply to dimension {d}")
        if herm_residual(m) > TAU_HERM:
            raise ArgumentError(
                f"density matrix not Hermitian within {TAU_HERM}: residual {herm_residual(m):.3e}"
            )
        tr = float(m.trace().real)
        if abs(tr - 1.0) > TAU_TR:
            raise ArgumentError(f"trace {tr} differs from 1 beyond {TAU_TR}")
        w = npl.eigvalsh((m + m.conj().T) / 2.0)
        if w[0] < -TAU_PSD:
            raise ArgumentError(f"negative eigenvalue {w[0]:.3e} below -{TAU_PSD}")
        self.matrix = (m + m.conj().T) / 2.0
        self.dims = dims
        self.matrix.setflags(write=False)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, vector: np.ndarray, dims: Sequence[int] | None = None) -> "DensityMatrix":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        v = v / npl.norm(v)
        return cls(np.outer(v, v.conj()), dims if dims is not None else (v.size,))

    @classmethod
    def maximally_mixed(cls, d: int, dims: Sequence[int] | None = None) -> "DensityMatrix":
        return cls(np.eye(d, dtype=complex) / d, dims if dims is not None else (d,))


def maximally_entangled(d: int) -> PureState:
    """(1/sqrt(d)) sum_i |ii> on a d x d bipartite space."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(v, (d, d))


def partial_trace_matrix(mat: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Partial trace of a square matrix over the factors not in `keep`.

    Kept factors stay in their original order. Works on any square matrix,
    not just density matrices; no normalization is applied.
    """
    mat = as_matrix(mat)
    dims = tuple(int(d) for d in dims)
    k = len(dims)
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise ArgumentError("keep must be nonempty")
    if keep[0] < 0 or keep[-1] >= k:
        raise ArgumentError(f"keep indices {keep} out of range for {k} factors")
    if int(np.prod(dims)) != mat.shape[0] or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"matrix shape {mat.shape} incompatible with dims {dims}")

    t = mat.reshape(dims + dims)
    # Row axis i and column axis k+i share a subscript when factor i is traced.
    row = list(range(k))
    col = [k + i if i in keep else i for i in range(k)]
    out = [i for i in keep] + [k + i for i in keep]
    reduced = np.einsum(t, row + col, out)
    dk = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(dk, dk)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept factors."""
    keep = sorted(set(int(i) for i in keep))
    red = partial_trace_matrix(rho.matrix, rho.dims, keep)
    return DensityMatrix(red, tuple(rho.dims[i] for i in keep))


def eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    h = as_matrix(h)
    if herm_residual(h) > TAU_HERM * max(1.0, float(np.abs(h).max(initial=0.0))):
        raise ArgumentError(f"matrix not Hermitian: residual {herm_residual(h):.3e}")
    try:
        w, v = npl.eigh((h + h.conj().T) / 2.0)
    except npl.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise NumericError("eigh", str(exc)) from exc
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def purify(rho: DensityMatrix) -> PureState:
    """Pure state on d x r whose first marginal is rho (r = numerical rank)."""
    w, v = eigh(rho.matrix)
    w = np.clip(w, 0.0, None)
    r = max(1, int(np.sum(w > TAU_PSD)))
    amp = v[:, :r] * np.sqrt(w[:r])
    vec = amp.reshape(-1)  # row-major: index (a, i) -> a*r + i
    vec = vec / npl.norm(vec)
    return PureState(vec, (rho.d, r))


def trace_norm(x: np.ndarray) -> float:
    """Sum of singular values (= sum |eigenvalues| for Hermitian input)."""
    x = as_matrix(x)
    if x.shape[0] != x.shape[1]:
        raise ArgumentError(f"trace norm expects a square matrix, got {x.shape}")
    if herm_residual(x) <= TAU_HERM * max(1.0, float(np.abs(x).max(initial=0.0))):
        return float(np.sum(np.abs(npl.eigvalsh((x + x.conj().T) / 2.0))))
    return float(np.sum(npl.svd(x, compute_uv=False)))
