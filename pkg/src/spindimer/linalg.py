"""Dense symmetric linear algebra helpers.

Everything in this package runs on real symmetric matrices (the dimer
Hamiltonian and its Gibbs states are real in the product basis), so the
helpers here are deliberately restricted to that case: eigendecomposition,
partial transposition over the first site of a bipartite system, trace norm,
Shannon entropy of a probability vector, and spectral function application.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "EigenSystem",
    "symmetric_eig",
    "partial_transpose_a",
    "trace_norm",
    "shannon_entropy_bits",
    "spectral_map",
    "validate_density",
]

# Probabilities below this are treated as exact zeros in entropy sums.
_PROB_FLOOR = 1e-14
# Negative values above this floor are rounding noise and are clamped to 0.
_NEG_CLAMP = -1e-12


def _as_symmetric(m: np.ndarray) -> np.ndarray:
    """Validate that m is a finite, square, real symmetric array."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(a - a.T).max()) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return a


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition of a symmetric matrix.

    values are ascending; vectors[:, k] is the unit eigenvector for
    values[k], so m = vectors @ diag(values) @ vectors.T.
    """

    values: np.ndarray
    vectors: np.ndarray


def symmetric_eig(m: np.ndarray) -> EigenSystem:
    """Eigendecompose a real symmetric matrix (ascending eigenvalues)."""
    a = _as_symmetric(m)
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values=values, vectors=vectors)


def partial_transpose_a(m: np.ndarray, dim_a: int = 3, dim_b: int = 3) -> np.ndarray:
    """Transpose the first tensor factor of a (dim_a*dim_b)^2 matrix.

    Index convention: row index i = dim_b*a + b. The output satisfies
    out[dim_b*a + b, dim_b*a2 + b2] = m[dim_b*a2 + b, dim_b*a + b2].
    """
    a = np.asarray(m, dtype=float)
    n = dim_a * dim_b
    if a.shape != (n, n):
        raise ValueError(f"expected shape {(n, n)}, got {a.shape}")
    blocks = a.reshape(dim_a, dim_b, dim_a, dim_b)
    return blocks.transpose(2, 1, 0, 3).reshape(n, n)


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a symmetric matrix."""
    a = _as_symmetric(m)
    return float(np.abs(np.linalg.eigvalsh(a)).sum())


def shannon_entropy_bits(p: np.ndarray) -> float:
    """Shannon entropy of a probability vector, in bits.

    Entries in [-1e-12, 0) are clamped to zero (eigensolver noise); entries
    below that are rejected. The vector must sum to 1 within 1e-9.
    """
    q = np.asarray(p, dtype=float).ravel()
    if not np.all(np.isfinite(q)):
        raise ValueError("probabilities contain non-finite entries")
    if float(q.min(initial=0.0)) < _NEG_CLAMP:
        raise ValueError(f"probability {q.min():.3e} below the -1e-12 clamp window")
    q = np.clip(q, 0.0, None)
    total = float(q.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within 1e-9")
    q = q[q >= _PROB_FLOOR]
    return float(-(q * np.log2(q)).sum()) if q.size else 0.0


def validate_density(rho: np.ndarray, dim: int | None = None) -> np.ndarray:
    """Check that rho is a symmetric density matrix: trace 1, PSD.

    Tolerances: trace within 1e-9 of 1, eigenvalues >= -1e-9. Returns the
    validated array.
    """
    a = _as_symmetric(rho)
    if dim is not None and a.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {a.shape}")
    tr = float(np.trace(a))
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1 within 1e-9")
    lo = float(np.linalg.eigvalsh(a)[0])
    if lo < -1e-9:
        raise ValueError(f"density matrix has eigenvalue {lo:.3e} < -1e-9")
    return a


def spectral_map(m: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply f to the spectrum: V f(diag) V^T for symmetric m.

    f receives the ascending eigenvalue vector and must return an array of
    the same shape.
    """
    sys = symmetric_eig(m)
    fw = np.asarray(f(sys.values), dtype=float)
    if fw.shape != sys.values.shape:
        raise ValueError("spectral function changed the eigenvalue shape")
    return (sys.vectors * fw) @ sys.vectors.T
