"""Spin-1 Heisenberg dimer: parameters, operators, Hamiltonian, spectrum.

Two spin-1 sites coupled by an XXZ exchange with single-ion anisotropy and a
longitudinal field:

    H = j (S1x S2x + S1y S2y) + delta S1z S2z
        + d_ani ((S1z)^2 + (S2z)^2) - h (S1z + S2z)

The 9-dimensional product basis is ordered |-1,-1>, |-1,0>, |-1,+1>, |0,-1>,
..., |+1,+1> (site labels -1, 0, +1; index i = 3a + b). The Sz matrix is
diag(+1, 0, -1) over that ket ordering, which fixes the sign convention of h:
the state |-1,-1> has energy delta + 2 d_ani - 2h.

Sy is purely imaginary in this basis; it is stored through its real factor W
(Sy = i W) so every matrix in the package stays real. The Hamiltonian is then
real symmetric: the exchange term is j (Sx (x) Sx - W (x) W).

All nine eigenpairs are known in closed form. The two field-free mixed levels
involve the amplitudes

    lambda_pm = (delta - 2 d_ani +- R) / (2 j),
    R = sqrt((delta - 2 d_ani)^2 + 8 j^2),

with lambda_plus * lambda_minus = -2 identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "SpinOperators",
    "spin_operators",
    "build_hamiltonian",
    "AnalyticSpectrum",
    "analytic_spectrum",
]

_SQRT2 = math.sqrt(2.0)

# Spin-1 operators over the ket ordering (|-1>, |0>, |+1>); see module docstring
# for the Sz sign convention.
_SX = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]) / _SQRT2
_W = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, 0.0]]) / _SQRT2
_SZ = np.diag([1.0, 0.0, -1.0])
for _m in (_SX, _W, _SZ):
    _m.setflags(write=False)


@dataclass(frozen=True)
class ModelParams:
    """Dimer couplings. j sets the energy unit and must be positive.

    delta: longitudinal exchange anisotropy
    d_ani: single-ion anisotropy
    h: longitudinal field
    """

    j: float = 1.0
    delta: float = 0.0
    d_ani: float = 0.0
    h: float = 0.0

    def __post_init__(self) -> None:
        vals = (self.j, self.delta, self.d_ani, self.h)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"couplings must be finite, got {vals}")
        if self.j <= 0.0:
            raise ValueError(f"j must be positive, got {self.j!r}")


@dataclass(frozen=True)
class SpinOperators:
    """Single-site spin-1 matrices: sx, sz real, sy = i * sy_imag."""

    sx: np.ndarray
    sy_imag: np.ndarray
    sz: np.ndarray


def spin_operators() -> SpinOperators:
    return SpinOperators(sx=_SX, sy_imag=_W, sz=_SZ)


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """Assemble the 9x9 real symmetric dimer Hamiltonian."""
    eye = np.eye(3)
    sz2 = _SZ @ _SZ
    ham = params.j * (np.kron(_SX, _SX) - np.kron(_W, _W))
    ham += params.delta * np.kron(_SZ, _SZ)
    ham += params.d_ani * (np.kron(sz2, eye) + np.kron(eye, sz2))
    ham -= params.h * (np.kron(_SZ, eye) + np.kron(eye, _SZ))
    return ham


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Closed-form eigenpairs, in the fixed level ordering 1..9.

    energies[k] pairs with vectors[:, k]. Levels, by structure:
      1: |-1,-1>                          4: |+1,+1>
      2,3: (|0,+1> +- |+1,0>)/sqrt(2) symmetric/antisymmetric pair
      5,6: (|-1,+1> + lambda_pm |0,0> + |+1,-1>) / sqrt(2 + lambda_pm^2)
      7: (|+1,-1> - |-1,+1>)/sqrt(2)
      8,9: (|-1,0> +- |0,-1>)/sqrt(2) pair
    """

    energies: np.ndarray
    vectors: np.ndarray
    lambda_plus: float
    lambda_minus: float


def analytic_spectrum(params: ModelParams) -> AnalyticSpectrum:
    j, dl, d, h = params.j, params.delta, params.d_ani, params.h
    r = math.hypot(dl - 2.0 * d, _SQRT2 * 2.0 * j)
    lam_p = (dl - 2.0 * d + r) / (2.0 * j)
    lam_m = (dl - 2.0 * d - r) / (2.0 * j)

    energies = np.array(
        [
            dl + 2.0 * d - 2.0 * h,
            j + d + h,
            -j + d + h,
            dl + 2.0 * d + 2.0 * h,
            -dl / 2.0 + d + r / 2.0,
            -dl / 2.0 + d - r / 2.0,
            -dl + 2.0 * d,
            j + d - h,
            -j + d - h,
        ]
    )

    vectors = np.zeros((9, 9))
    vectors[0, 0] = 1.0  # |-1,-1>
    vectors[[5, 7], 1] = (1.0 / _SQRT2, 1.0 / _SQRT2)  # |0,+1> + |+1,0>
    vectors[[5, 7], 2] = (-1.0 / _SQRT2, 1.0 / _SQRT2)
    vectors[8, 3] = 1.0  # |+1,+1>
    for col, lam in ((4, lam_p), (5, lam_m)):
        norm = math.sqrt(2.0 + lam * lam)
        vectors[[2, 4, 6], col] = (1.0 / norm, lam / norm, 1.0 / norm)
    vectors[[2, 6], 6] = (-1.0 / _SQRT2, 1.0 / _SQRT2)  # |+1,-1> - |-1,+1>
    vectors[[1, 3], 7] = (1.0 / _SQRT2, 1.0 / _SQRT2)  # |-1,0> + |0,-1>
    vectors[[1, 3], 8] = (-1.0 / _SQRT2, 1.0 / _SQRT2)

    return AnalyticSpectrum(
        energies=energies, vectors=vectors, lambda_plus=lam_p, lambda_minus=lam_m
    )
