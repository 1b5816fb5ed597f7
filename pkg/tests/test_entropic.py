"""Tests for entropies and fixed-input information quantities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcont import channels as ch
from capcont.entropic import (
    Ensemble,
    binary_entropy,
    coherent_information,
    conditional_entropy,
    holevo_information,
    mutual_information,
    private_information,
    von_neumann_entropy,
)
from capcont.errors import ArgumentError
from capcont.linalg import DensityMatrix, basis_state, maximally_entangled
from capcont.sampling import random_channel, random_density_matrix, rng_for

# ---------------------------------------------------------------- oracles

# H(1/4) frozen from -(1/4)log2(1/4) - (3/4)log2(3/4)
H_QUARTER = 0.8112781244591328


def _shannon_oracle(probs):
    """Plain math-library Shannon entropy in bits."""
    return -sum(p * math.log2(p) for p in probs if p > 0)


def _erasure_coherent_oracle(p):
    """Eigenvalue bookkeeping for erasure acting on half a Bell pair.

    Joint output spectrum: 1-p on the surviving Bell projector, p/2 twice
    on the flagged branch. Output marginal spectrum: (1-p)/2 twice plus p.
    """
    s_ab = _shannon_oracle([1 - p, p / 2, p / 2])
    s_b = _shannon_oracle([(1 - p) / 2, (1 - p) / 2, p])
    return s_b - s_ab


def _erasure_holevo_oracle(p):
    """Basis-ensemble Holevo value of erasure: output states share spectrum
    {1-p, p}, the average has spectrum {(1-p)/2, (1-p)/2, p}."""
    return _shannon_oracle([(1 - p) / 2, (1 - p) / 2, p]) - _shannon_oracle([1 - p, p])


# -------------------------------------------------------------- entropies


def test_von_neumann_entropy_basics():
    assert von_neumann_entropy(DensityMatrix.from_pure(basis_state(2, 0))) == 0.0
    for d in (2, 3, 8):
        s = von_neumann_entropy(DensityMatrix.maximally_mixed(d))
        assert abs(s - math.log2(d)) < 1e-12
    s = von_neumann_entropy(DensityMatrix(np.diag([0.75, 0.25])))
    assert abs(s - H_QUARTER) < 1e-12


def test_binary_entropy_values_and_range():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert abs(binary_entropy(0.5) - 1.0) < 1e-15
    assert abs(binary_entropy(0.25) - H_QUARTER) < 1e-15
    assert abs(binary_entropy(0.25) - _shannon_oracle([0.25, 0.75])) < 1e-15
    for bad in (-0.01, 1.01):
        with pytest.raises(ArgumentError):
            binary_entropy(bad)


def test_conditional_entropy_cases():
    rng = rng_for(20)
    a = random_density_matrix(2, rng)
    b = random_density_matrix(3, rng)
    prod = DensityMatrix(np.kron(a.matrix, b.matrix), dims=(2, 3))
    assert abs(conditional_entropy(prod, 1) - von_neumann_entropy(a)) < 1e-10

    bell = maximally_entangled(2).density()
    assert abs(conditional_entropy(bell, 1) - (-1.0)) < 1e-10

    cc = DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]), dims=(2, 2))
    assert abs(conditional_entropy(cc, 1)) < 1e-10  # S(AB)=1, S(B)=1

    with pytest.raises(ArgumentError):
        conditional_entropy(bell, 2)


def test_mutual_information_cases():
    rng = rng_for(21)
    a = random_density_matrix(2, rng)
    b = random_density_matrix(2, rng)
    prod = DensityMatrix(np.kron(a.matrix, b.matrix), dims=(2, 2))
    assert abs(mutual_information(prod, 1)) < 1e-10
    assert abs(mutual_information(maximally_entangled(2).density(), 1) - 2.0) < 1e-10
    cc = DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]), dims=(2, 2))
    assert abs(mutual_information(cc, 1) - 1.0) < 1e-10


# ----------------------------------------------------- channel functionals


def test_coherent_information_identity_and_erasure():
    bell = maximally_entangled(2).density()
    assert abs(coherent_information(ch.identity(2), bell) - 1.0) < 1e-10
    assert abs(coherent_information(ch.erasure(2, 0.5), bell)) < 1e-10
    for p in (0.0, 0.1, 0.25, 0.7, 1.0):
        got = coherent_information(ch.erasure(2, p), bell)
        assert abs(got - _erasure_coherent_oracle(p)) < 1e-10
        assert abs(got - (1.0 - 2.0 * p)) < 1e-10


def test_coherent_information_input_validation():
    bell = maximally_entangled(2).density()
    with pytest.raises(ArgumentError):
        coherent_information(ch.identity(3), bell)
    with pytest.raises(ArgumentError):
        coherent_information(ch.identity(2), DensityMatrix.maximally_mixed(4))


def test_holevo_information_cases():
    single = Ensemble([(1.0, DensityMatrix.maximally_mixed(2))])
    assert abs(holevo_information(ch.identity(2), single)) < 1e-12
    basis = Ensemble.uniform_basis(2)
    assert abs(holevo_information(ch.identity(2), basis) - 1.0) < 1e-12
    assert abs(holevo_information(ch.constant_channel(2), basis)) < 1e-12
    for p in (0.1, 0.5, 0.75):
        got = holevo_information(ch.erasure(2, p), basis)
        assert abs(got - _erasure_holevo_oracle(p)) < 1e-10
        assert abs(got - (1.0 - p)) < 1e-10


def test_private_information_cases():
    basis = Ensemble.uniform_basis(2)
    assert abs(private_information(ch.identity(2), basis) - 1.0) < 1e-12
    # The constant channel leaks everything to the environment.
    assert private_information(ch.constant_channel(2), basis) <= 1e-12
    # 50% erasure splits output and environment symmetrically.
    assert abs(private_information(ch.erasure(2, 0.5), basis)) < 1e-10
    # General erasure: I(X;B) - I(X;E) = (1-p) - p.
    for p in (0.1, 0.25, 0.8):
        got = private_information(ch.erasure(2, p), basis)
        assert abs(got - (1.0 - 2.0 * p)) < 1e-10


def test_private_information_dilation_invariance():
    # Rotating the environment changes the dilation but no entropy of it.
    rng = rng_for(22)
    chan = random_channel(2, 2, rng)
    basis = Ensemble.uniform_basis(2)
    comp = ch.complementary(chan)
    d_env = comp.d_out
    u = np.exp(2j * np.pi / d_env) ** np.outer(np.arange(d_env), np.arange(d_env)) / np.sqrt(d_env)
    rotated = ch.QuantumChannel([u @ k for k in comp.kraus])
    lhs = holevo_information(comp, basis)
    rhs = holevo_information(rotated, basis)
    assert abs(lhs - rhs) < 1e-10


# --------------------------------------------------------------- invariants


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_entropy_range(seed):
    rng = rng_for(seed)
    d = int(rng.integers(2, 9))
    s = von_neumann_entropy(random_density_matrix(d, rng))
    assert -1e-12 <= s <= math.log2(d) + 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_information_quantity_ranges(seed):
    rng = rng_for(seed)
    chan = random_channel(2, 2, rng)
    ens = Ensemble(
        [(0.5, random_density_matrix(2, rng, rank=1)), (0.5, random_density_matrix(2, rng, rank=1))]
    )
    chi = holevo_information(chan, ens)
    priv = private_information(chan, ens)
    assert -1e-9 <= chi <= math.log2(chan.d_out) + 1e-9
    assert priv <= chi + 1e-9
    rho = random_density_matrix(4, rng, dims=(2, 2))
    coh = coherent_information(chan, rho)
    assert -math.log2(2) - 1e-9 <= coh <= math.log2(chan.d_out) + 1e-9


def test_conditional_entropy_stability_under_mixing():
    # Small-perturbation sanity in the regime the continuity suites cover.
    rng = rng_for(23)
    for _ in range(10):
        rho = random_density_matrix(4, rng, dims=(2, 2))
        tau = random_density_matrix(4, rng, dims=(2, 2))
        t = float(rng.uniform(0.0, 0.25))
        sigma = DensityMatrix((1 - t) * rho.matrix + t * tau.matrix, dims=(2, 2))
        eps = float(np.sum(np.abs(np.linalg.eigvalsh(rho.matrix - sigma.matrix))))
        if eps == 0.0 or eps > 0.5:
            continue
        gap = abs(conditional_entropy(rho, 1) - conditional_entropy(sigma, 1))
        af = 4 * eps * 1.0 + 2 * _shannon_oracle([eps, 1 - eps])
        assert gap <= af + 1e-7
