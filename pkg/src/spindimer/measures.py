"""Coherence, entanglement negativity, and phase classification.

Quantifiers operate on 9x9 density matrices in the ordered product basis.
Coherence is basis-dependent and always refers to that basis. Negativity is
the eigenvalue-based definition (trace norm of the partial transpose over
the first site); it can miss entanglement that survives partial
transposition, which is possible for two qutrits, so negativity zero means
"no distillable entanglement detected", not separability.

Bounds for this system: c_l1 <= 8, c_r <= log2(9), negativity <= 1. Note
c_r <= c_l1 does NOT hold in general beyond qubits and is not assumed
anywhere.

The *_closed_form functions are fast paths valid only for states with the
thermal sparsity pattern; `verify` cross-checks them against the generic
routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import partial_transpose_a, shannon_entropy_bits, validate_density
from .model import analytic_spectrum
from .steering import STEERING_BOUND, steering_value
from .thermal import ThermalState

__all__ = [
    "Phase",
    "ResourceReport",
    "coherence_l1",
    "coherence_relative",
    "negativity",
    "coherence_l1_closed_form",
    "gibbs_eigenvalues",
    "coherence_relative_closed_form",
    "negativity_closed_form",
    "classify_phase",
    "resource_report",
]


class Phase(str, Enum):
    """Zero-temperature ground-state regions, keyed by negativity."""

    REGION_I = "RegionI"
    REGION_II = "RegionII"
    REGION_III = "RegionIII"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ResourceReport:
    """All quantifiers of one state. phase is set only for t = 0 states."""

    c_l1: float
    c_r: float
    negativity: float
    steering_s: float
    steerable: bool
    phase: Phase | None = None


def coherence_l1(rho: np.ndarray) -> float:
    """Sum of absolute off-diagonal elements."""
    a = validate_density(rho, 9)
    return float(np.abs(a).sum() - np.abs(np.diag(a)).sum())


def coherence_relative(rho: np.ndarray) -> float:
    """Relative entropy of coherence in bits: S(diag(rho)) - S(rho)."""
    a = validate_density(rho, 9)
    mu = np.clip(np.linalg.eigvalsh(a), 0.0, None)
    return shannon_entropy_bits(np.diag(a)) - shannon_entropy_bits(mu)


def negativity(rho: np.ndarray) -> float:
    """(||rho^{T_A}||_1 - 1) / 2 with the trace norm over eigenvalues."""
    a = validate_density(rho, 9)
    w = np.linalg.eigvalsh(partial_transpose_a(a))
    n = 0.5 * (float(np.abs(w).sum()) - 1.0)
    if n < -1e-12:
        raise ArithmeticError(f"negativity evaluated to {n!r}")
    return max(0.0, n)


def coherence_l1_closed_form(state: ThermalState) -> float:
    """c_l1 from the four independent off-diagonal thermal elements."""
    r = state.rho
    return float(
        2.0 * abs(r[1, 3]) + 4.0 * abs(r[2, 4]) + 2.0 * abs(r[2, 6]) + 2.0 * abs(r[5, 7])
    )


def gibbs_eigenvalues(state: ThermalState) -> np.ndarray:
    """The nine Gibbs eigenvalues (normalized Boltzmann weights), level order.

    Valid for finite-t states only; the eigenbasis is temperature
    independent, so these are exactly the spectrum of state.rho.
    """
    if state.t <= 0.0:
        raise ValueError("gibbs_eigenvalues requires a finite-temperature state")
    e = analytic_spectrum(state.params).energies
    w = np.exp(-(e - e.min()) / (state.t * state.params.j))
    return w / w.sum()


def coherence_relative_closed_form(state: ThermalState) -> float:
    """c_r from populations and the closed-form Gibbs eigenvalues."""
    mu = gibbs_eigenvalues(state)
    return shannon_entropy_bits(np.diag(state.rho)) - shannon_entropy_bits(mu)


def negativity_closed_form(state: ThermalState) -> float:
    """Diagnostic block-norm form of the thermal negativity.

    Combines row norms of the partially transposed blocks instead of their
    eigenvalues. It coincides with `negativity` on high-symmetry states but
    deviates away from them; `verify` reports the measured gap. Use
    `negativity` for anything quantitative.
    """
    r = state.rho
    s = (
        math.sqrt(r[0, 0] ** 2 + r[1, 3] ** 2 + r[2, 6] ** 2)
        + 2.0 * math.sqrt(r[1, 1] ** 2 + r[2, 4] ** 2)
        + 2.0 * math.sqrt(r[2, 4] ** 2 + r[5, 5] ** 2)
        + math.sqrt(r[1, 3] ** 2 + r[4, 4] ** 2 + r[5, 7] ** 2)
        + 2.0 * abs(r[2, 2])
        + math.sqrt(r[2, 6] ** 2 + r[5, 7] ** 2 + r[8, 8] ** 2)
    )
    return 0.5 * (s - 1.0)


def classify_phase(n: float, tol: float = 1e-6) -> Phase:
    """Label a zero-T point by its negativity: 1, 1/2, 0, or neither."""
    if not math.isfinite(n) or n < -1e-12:
        raise ValueError(f"negativity must be a finite non-negative value, got {n!r}")
    if abs(n - 1.0) <= tol:
        return Phase.REGION_I
    if abs(n - 0.5) <= tol:
        return Phase.REGION_II
    if n <= tol:
        return Phase.REGION_III
    return Phase.UNCLASSIFIED


def resource_report(state: ThermalState, phase_tol: float = 1e-6) -> ResourceReport:
    """Evaluate every quantifier of a state in one pass."""
    a = validate_density(state.rho, 9)
    n = negativity(a)
    breakdown = steering_value(a)
    phase = classify_phase(n, phase_tol) if state.t == 0.0 else None
    return ResourceReport(
        c_l1=coherence_l1(a),
        c_r=coherence_relative(a),
        negativity=n,
        steering_s=breakdown.s_value,
        steerable=breakdown.s_value > STEERING_BOUND,
        phase=phase,
    )
