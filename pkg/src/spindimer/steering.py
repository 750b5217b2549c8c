"""Entropic steering criterion with three mutually unbiased spin measurements.

Both sites are measured along x, y, and z. For each axis the 3x3 joint
outcome distribution and the A-side marginal give a conditional entropy
H(B|A); the steering functional is

    S = 16/3 - [H(B|A)_x + H(B|A)_y + H(B|A)_z]

and the state is steerable (A to B) when S exceeds the entropic uncertainty
bound 8/3 strictly. S is reported raw, so near-threshold values keep their
sign information.

Outcome indices are ordered by operator eigenvalue (+1, 0, -1) for every
axis. Conditioning is on site A only; the swapped direction is a property of
the state, not a separate API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import shannon_entropy_bits, validate_density

__all__ = [
    "AXES",
    "STEERING_BOUND",
    "MeasurementBasis",
    "measurement_bases",
    "joint_probabilities",
    "joint_probabilities_closed_form",
    "marginal_probabilities_a",
    "SteeringBreakdown",
    "steering_value",
    "eur_bound",
]

AXES = ("x", "y", "z")

# Entropic uncertainty bound for 3 mutually unbiased qutrit measurements.
STEERING_BOUND = 8.0 / 3.0

_S2 = math.sqrt(0.5)

# Eigenvector amplitudes per axis: rows are outcomes (+1, 0, -1), columns are
# ket positions. Vectors are real for x and z; y splits into real/imag parts.
_X_REAL = np.array([[0.5, _S2, 0.5], [_S2, 0.0, -_S2], [0.5, -_S2, 0.5]])
_Y_REAL = np.array([[0.5, 0.0, -0.5], [_S2, 0.0, _S2], [0.5, 0.0, -0.5]])
_Y_IMAG = np.array([[0.0, _S2, 0.0], [0.0, 0.0, 0.0], [0.0, -_S2, 0.0]])
_Z_REAL = np.eye(3)
_ZERO3 = np.zeros((3, 3))
for _m in (_X_REAL, _Y_REAL, _Y_IMAG, _Z_REAL, _ZERO3):
    _m.setflags(write=False)


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal eigenbasis of one spin axis, outcomes ordered (+1, 0, -1).

    Row a of amps_real + i*amps_imag is the eigenvector for outcome a.
    """

    axis: str
    amps_real: np.ndarray
    amps_imag: np.ndarray


_BASES = {
    "x": MeasurementBasis("x", _X_REAL, _ZERO3),
    "y": MeasurementBasis("y", _Y_REAL, _Y_IMAG),
    "z": MeasurementBasis("z", _Z_REAL, _ZERO3),
}


def measurement_bases() -> dict[str, MeasurementBasis]:
    return dict(_BASES)


def _basis(axis: str) -> MeasurementBasis:
    try:
        return _BASES[axis]
    except KeyError:
        raise ValueError(f"unknown axis {axis!r}, expected one of {AXES}") from None


def _joint(rho: np.ndarray, basis: MeasurementBasis) -> np.ndarray:
    """<ab|rho|ab> for all outcome pairs; rho must be real symmetric."""
    vr, vi = basis.amps_real, basis.amps_imag
    p = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            tr = np.kron(vr[a], vr[b]) - np.kron(vi[a], vi[b])
            ti = np.kron(vr[a], vi[b]) + np.kron(vi[a], vr[b])
            p[a, b] = tr @ rho @ tr + ti @ rho @ ti
    # Expectation values of a near-PSD matrix can dip below zero by noise.
    return np.clip(p, 0.0, None)


def joint_probabilities(rho: np.ndarray, axis: str) -> np.ndarray:
    """3x3 joint outcome table for measuring both sites along one axis."""
    basis = _basis(axis)
    return _joint(validate_density(rho, 9), basis)


def marginal_probabilities_a(rho: np.ndarray, axis: str) -> np.ndarray:
    """Outcome distribution of the axis measurement on site A alone."""
    basis = _basis(axis)
    a = validate_density(rho, 9)
    rho_a = np.einsum("abcb->ac", a.reshape(3, 3, 3, 3))
    vr, vi = basis.amps_real, basis.amps_imag
    p = np.einsum("oi,ij,oj->o", vr, rho_a, vr) + np.einsum(
        "oi,ij,oj->o", vi, rho_a, vi
    )
    return np.clip(p, 0.0, None)


def joint_probabilities_closed_form(rho: np.ndarray, axis: str) -> np.ndarray:
    """Joint table from the thermal sparsity pattern (fast path).

    Valid only for matrices with the thermal block structure; entries
    outside that pattern are ignored. The x and y tables coincide for this
    state family.
    """
    r = np.asarray(rho, dtype=float)
    if r.shape != (9, 9):
        raise ValueError(f"expected a 9x9 matrix, got {r.shape}")
    if axis == "z":
        return np.diag(r).reshape(3, 3).copy()
    if axis not in ("x", "y"):
        raise ValueError(f"unknown axis {axis!r}, expected one of {AXES}")
    kappa = r[0, 0] + r[2, 2] + r[6, 6] + r[8, 8]
    zeta = r[1, 1] + r[3, 3] + 3.0 * r[4, 4] + r[5, 5] + r[7, 7]
    eta = 4.0 * (r[1, 3] + r[2, 4] + r[4, 6] + r[5, 7])
    xi = 2.0 * r[2, 6]
    p_aligned = (1.0 + zeta + eta + xi) / 16.0
    p_opposed = (1.0 + zeta - eta + xi) / 16.0
    p_00 = (kappa + xi) / 4.0
    p_edge0 = (kappa - xi + 2.0 * (r[3, 3] + r[5, 5])) / 8.0
    p_0edge = (kappa - xi + 2.0 * (r[1, 1] + r[7, 7])) / 8.0
    return np.array(
        [
            [p_aligned, p_edge0, p_opposed],
            [p_0edge, p_00, p_0edge],
            [p_opposed, p_edge0, p_aligned],
        ]
    )


@dataclass(frozen=True)
class SteeringBreakdown:
    """Steering functional with all intermediate distributions.

    joint and marginals_a are keyed by axis; conditional_entropies holds
    H(B|A) per axis in bits.
    """

    joint: dict[str, np.ndarray]
    marginals_a: dict[str, np.ndarray]
    conditional_entropies: dict[str, float]
    s_value: float
    steerable: bool


def _plogp_sum(p: np.ndarray, scale: float = 1.0) -> float:
    """Sum of p*log2(scale*p), with p < 1e-14 treated as exact zeros."""
    q = p.ravel()
    q = q[q >= 1e-14]
    return float((q * np.log2(scale * q)).sum())


def steering_value(rho: np.ndarray) -> SteeringBreakdown:
    """Evaluate the steering functional and its breakdown for one state."""
    a = validate_density(rho, 9)
    rho_a = np.einsum("abcb->ac", a.reshape(3, 3, 3, 3))

    joint: dict[str, np.ndarray] = {}
    marginals: dict[str, np.ndarray] = {}
    cond: dict[str, float] = {}
    s = 0.0
    for axis in AXES:
        basis = _BASES[axis]
        pj = _joint(a, basis)
        vr, vi = basis.amps_real, basis.amps_imag
        pa = np.clip(
            np.einsum("oi,ij,oj->o", vr, rho_a, vr)
            + np.einsum("oi,ij,oj->o", vi, rho_a, vi),
            0.0,
            None,
        )
        joint[axis] = pj
        marginals[axis] = pa
        cond[axis] = shannon_entropy_bits(pj.ravel()) - shannon_entropy_bits(pa)
        scale = 32.0 * np.cbrt(2.0) if axis == "z" else 1.0
        s += _plogp_sum(pj, scale) - _plogp_sum(pa)

    # Internal identity: the literal functional must match 16/3 - sum H(B|A).
    via_entropies = 16.0 / 3.0 - sum(cond.values())
    if abs(s - via_entropies) > 1e-10:
        raise ArithmeticError(
            f"steering routes disagree: {s!r} vs {via_entropies!r}"
        )
    return SteeringBreakdown(
        joint=joint,
        marginals_a=marginals,
        conditional_entropies=cond,
        s_value=s,
        steerable=s > STEERING_BOUND,
    )


def eur_bound(n_measurements: int, dim_a: int) -> float:
    """Entropic uncertainty bound for N mutually unbiased measurements.

    B = N log2 F + (N - F(d+N-1)/d)(1+F) log2(1+1/F) with
    F = floor(N d / (d+N-1)); equals 8/3 for (N, d) = (3, 3).
    """
    n, d = int(n_measurements), int(dim_a)
    if n < 1 or d < 2:
        raise ValueError(f"need n_measurements >= 1 and dim_a >= 2, got {(n, d)}")
    f = (n * d) // (d + n - 1)
    return n * math.log2(f) + (n - f * (d + n - 1) / d) * (1 + f) * math.log2(
        1.0 + 1.0 / f
    )
