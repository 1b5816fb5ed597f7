"""Mutual-simulation arithmetic for assisted quantum capacities.

Interior points of the positive-capacity region admit two-way mixing
simulations: each channel of a pair simulates the other at a rate premium
set by the mixing coefficients, which yields continuity bounds for the
assisted capacities without any protocol machinery.  This module is
deliberately pure scalar arithmetic over those rates; the mixing
coefficients are inputs, since choosing optimal boundary channels for a
concrete pair is a geometry problem with no operational recipe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError


def _check_range(name: str, value: float, lo: float, hi: float) -> float:
    value = float(value)
    if not lo <= value <= hi:
        raise ArgumentError(f"{name} {value} outside [{lo}, {hi}]")
    return value


@dataclass(frozen=True)
class MixingGeometry:
    """Mixing coefficients and ball geometry for a mutual simulation.

    p1 mixes the far boundary channel into the first channel of the pair
    and p2 (at most 1/2 by construction) the reverse; Delta is the radius
    of the channel ball and delta in (0, Delta] the pair's separation;
    log_d is the qubit count log of min(d_in, d_out).
    """

    p1: float
    p2: float
    Delta: float
    delta: float
    log_d: float

    def __post_init__(self):
        _check_range("p1", self.p1, 0.0, 1.0)
        _check_range("p2", self.p2, 0.0, 0.5)
        if not self.Delta > 0:
            raise ArgumentError(f"Delta {self.Delta} must be positive")
        if not 0.0 < self.delta <= self.Delta:
            raise ArgumentError(f"delta {self.delta} outside (0, {self.Delta}]")
        if not self.log_d > 0:
            raise ArgumentError(f"log_d {self.log_d} must be positive")


def simulation_upper_bound(q2_n: float, p1: float, log_d: float) -> float:
    """Rate ceiling p1 log d + (1 - p1) q2_n on the simulated channel.

    The derivation divides by the simulating capacity, so q2_n must be
    positive: the bound only exists in the interior of the
    positive-capacity region.
    """
    q2_n = float(q2_n)
    if q2_n <= 0:
        raise ArgumentError(f"simulating capacity {q2_n} must be positive")
    p1 = _check_range("p1", p1, 0.0, 1.0)
    return p1 * float(log_d) + (1.0 - p1) * q2_n


def mutual_gap_bound(
    q2_n: float, q2_m: float, p1: float, p2: float, log_d: float
) -> float:
    """Two-sided capacity gap bound min of p_i (log d - capacity_i)."""
    log_d = float(log_d)
    q2_n = _check_range("q2_n", q2_n, 0.0, log_d)
    q2_m = _check_range("q2_m", q2_m, 0.0, log_d)
    p1 = _check_range("p1", p1, 0.0, 1.0)
    p2 = _check_range("p2", p2, 0.0, 1.0)
    return min(p1 * (log_d - q2_n), p2 * (log_d - q2_m))


def colinear_rescale(geom: MixingGeometry) -> tuple[float, float]:
    """Mixing coefficients after shrinking the boundary ray to radius delta.

    q1 rescales linearly; q2 renormalizes through the convex rearrangement
    and stays below 2 p2 delta/Delta because p2 never exceeds 1/2.
    """
    r = geom.delta / geom.Delta
    q1 = geom.p1 * r
    q2 = geom.p2 * r / (r * geom.p2 + (1.0 - geom.p2))
    return q1, q2


def continuity_delta(eps: float, Delta: float, log_d: float) -> float:
    """Separation radius Delta eps / (2 log d) that keeps the gap within eps.

    All three arguments are positive by assumption; composing the result
    with colinear_rescale and mutual_gap_bound bounds the assisted-capacity
    gap of any pair within this separation by eps.
    """
    return float(Delta) * float(eps) / (2.0 * float(log_d))


def erasure_q2(p: float) -> float:
    """Two-way assisted quantum capacity 1 - p of the erasure channel."""
    p = _check_range("p", p, 0.0, 1.0)
    return 1.0 - p


def erasure_qb_bounds(p: float) -> tuple[float, float]:
    """Bracket for the backward-assisted capacity of the erasure channel.

    The lower bound is the unassisted coherent-information capacity
    max(1 - 2p, 0); the upper bound is the two-way capacity 1 - p, which
    dominates the backward-assisted one.
    """
    p = _check_range("p", p, 0.0, 1.0)
    return max(1.0 - 2.0 * p, 0.0), 1.0 - p
