"""Gibbs and ground states of the dimer.

The Gibbs state at dimensionless temperature t (in units of the exchange j,
so beta = 1/(t*j)) has a closed form: in the ordered product basis it is
block sparse with population blocks on {0}, {8}, {1,3}, {5,7} and a 3x3
block on {2,4,6} built from the two exchange-mixed levels and the
antisymmetric combination. `gibbs_closed_form` assembles that expression;
`gibbs_oracle` computes exp(-beta H)/Z spectrally and exists to cross-check
it. The two must agree to ~1e-14 elementwise; `verify` enforces 1e-10.

At very low t the literal Boltzmann factors overflow, so below t = 0.02 the
closed-form builder evaluates all weights relative to the ground energy and
normalizes by the assembled trace. The reported partition function stays
literal and may be inf there; the density matrix is always finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, analytic_spectrum, build_hamiltonian

__all__ = [
    "ThermalState",
    "partition_function",
    "gibbs_closed_form",
    "gibbs_oracle",
    "ground_state",
    "thermal_state",
]

# Below this temperature the literal cosh/sinh element forms overflow.
_SHIFT_THRESHOLD = 0.02


@dataclass(frozen=True)
class ThermalState:
    """A dimer state with its provenance.

    z is the partition function for finite-t states (possibly inf for
    extreme beta) and None for ground states. ground_rank is the ground
    degeneracy for t = 0 states and None otherwise.
    """

    params: ModelParams
    t: float
    rho: np.ndarray
    z: float | None = None
    ground_rank: int | None = None


def _beta(params: ModelParams, t: float) -> float:
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError(f"temperature must be positive and finite, got {t!r}")
    return 1.0 / (t * params.j)


def partition_function(params: ModelParams, t: float) -> float:
    """Closed-form partition function; requires t > 0.

    May overflow to inf for beta*|E| beyond float range; the state builders
    stay finite regardless.
    """
    b = _beta(params, t)
    j, dl, d, h = params.j, params.delta, params.d_ani, params.h
    r = math.hypot(dl - 2.0 * d, 2.0 * math.sqrt(2.0) * j)
    with np.errstate(over="ignore"):
        z = (
            np.exp(b * (dl - 2.0 * d))
            + 2.0 * np.exp(-b * (dl + 2.0 * d)) * np.cosh(2.0 * b * h)
            + 2.0 * np.exp(-b * d) * (np.cosh(b * (h + j)) + np.cosh(b * (h - j)))
            + 2.0 * np.exp(b * (dl - 2.0 * d) / 2.0) * np.cosh(b * r / 2.0)
        )
    return float(z)


def _assemble(
    d00: float, d11: float, d22: float, d44: float, d55: float, d88: float,
    o13: float, o24: float, o26: float, o57: float,
) -> np.ndarray:
    rho = np.zeros((9, 9))
    rho[0, 0] = d00
    rho[1, 1] = rho[3, 3] = d11
    rho[2, 2] = rho[6, 6] = d22
    rho[4, 4] = d44
    rho[5, 5] = rho[7, 7] = d55
    rho[8, 8] = d88
    rho[1, 3] = rho[3, 1] = o13
    rho[5, 7] = rho[7, 5] = o57
    rho[2, 4] = rho[4, 2] = o24
    rho[4, 6] = rho[6, 4] = o24
    rho[2, 6] = rho[6, 2] = o26
    return rho


def gibbs_closed_form(params: ModelParams, t: float) -> ThermalState:
    """Closed-form Gibbs state at dimensionless temperature t > 0."""
    b = _beta(params, t)
    j, dl, d, h = params.j, params.delta, params.d_ani, params.h
    spec = analytic_spectrum(params)
    lam_p, lam_m = spec.lambda_plus, spec.lambda_minus
    e = spec.energies

    if t >= _SHIFT_THRESHOLD:
        d00 = math.exp(-b * e[0])
        d88 = math.exp(-b * e[3])
        d11 = math.exp(-b * (d - h)) * math.cosh(b * j)
        o13 = -math.exp(-b * (d - h)) * math.sinh(b * j)
        d55 = math.exp(-b * (d + h)) * math.cosh(b * j)
        o57 = -math.exp(-b * (d + h)) * math.sinh(b * j)
        w5 = math.exp(-b * e[4]) / (2.0 + lam_p * lam_p)
        w6 = math.exp(-b * e[5]) / (2.0 + lam_m * lam_m)
        w7 = math.exp(-b * e[6]) / 2.0
    else:
        # Shifted evaluation: weights relative to the ground energy.
        w = np.exp(-b * (e - e.min()))
        d00, d88 = w[0], w[3]
        d11 = 0.5 * (w[7] + w[8])
        o13 = 0.5 * (w[7] - w[8])
        d55 = 0.5 * (w[1] + w[2])
        o57 = 0.5 * (w[1] - w[2])
        w5 = w[4] / (2.0 + lam_p * lam_p)
        w6 = w[5] / (2.0 + lam_m * lam_m)
        w7 = w[6] / 2.0

    d22 = w5 + w6 + w7
    o24 = lam_p * w5 + lam_m * w6
    o26 = w5 + w6 - w7
    d44 = lam_p * lam_p * w5 + lam_m * lam_m * w6

    rho = _assemble(d00, d11, d22, d44, d55, d88, o13, o24, o26, o57)
    rho /= np.trace(rho)
    return ThermalState(params=params, t=t, rho=rho, z=partition_function(params, t))


def gibbs_oracle(params: ModelParams, t: float) -> ThermalState:
    """Spectral exp(-beta H)/Z, independent of any closed form."""
    b = _beta(params, t)
    ham = build_hamiltonian(params)
    w, v = np.linalg.eigh(ham)
    weights = np.exp(-b * (w - w[0]))
    rho = (v * weights) @ v.T
    rho /= weights.sum()
    with np.errstate(over="ignore"):
        z = float(np.exp(-b * w).sum())
    return ThermalState(params=params, t=t, rho=rho, z=z)


def ground_state(params: ModelParams, degeneracy_tol: float | None = None) -> ThermalState:
    """Zero-temperature state: the normalized ground-space projector.

    Levels within degeneracy_tol (default 1e-9 * j) of the minimum are
    averaged with equal weight, so level crossings give the maximally mixed
    ground-space state.
    """
    tol = 1e-9 * params.j if degeneracy_tol is None else float(degeneracy_tol)
    if not (math.isfinite(tol) and tol >= 0.0):
        raise ValueError(f"degeneracy_tol must be non-negative, got {degeneracy_tol!r}")
    ham = build_hamiltonian(params)
    w, v = np.linalg.eigh(ham)
    sel = v[:, w - w[0] <= tol]
    rank = sel.shape[1]
    rho = (sel @ sel.T) / rank
    return ThermalState(params=params, t=0.0, rho=rho, ground_rank=rank)


def thermal_state(
    params: ModelParams, t: float, degeneracy_tol: float | None = None
) -> ThermalState:
    """Dispatch: ground state at t = 0, closed-form Gibbs state for t > 0."""
    if t == 0.0:
        return ground_state(params, degeneracy_tol)
    return gibbs_closed_form(params, t)
