"""Eigendecomposition and eigenvector/signal overlap statistics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralDecomposition",
    "OverlapVector",
    "eig_symmetric",
    "overlaps",
    "quadratic_form",
    "energy_sum",
    "top_count",
]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in non-increasing order; column ``i`` of ``eigenvectors``
    belongs to ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class OverlapVector:
    """Pairs ``(lambda_i, s_i)`` with ``s_i = <v_i, u>^2``."""

    eigenvalues: np.ndarray
    s: np.ndarray

    @property
    def n(self) -> int:
        return self.s.size

    def scaled(self) -> np.ndarray:
        """``N * s_i``, the quantity whose conditional mean is p(x; theta)."""
        return self.n * self.s


def eig_symmetric(b: np.ndarray, atol: float = 0.0) -> SpectralDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Backed by LAPACK ``syevd`` through :func:`numpy.linalg.eigh`. Each
    eigenvector is signed so that its largest-magnitude component is
    positive.

    Parameters
    ----------
    b : ndarray
        Square real matrix.
    atol : float
        Largest tolerated ``|b - b.T|`` entry; the default demands exact
        symmetry.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("matrix has non-finite entries")
    if np.max(np.abs(b - b.T), initial=0.0) > atol:
        raise ValueError("matrix is not symmetric")
    w, v = np.linalg.eigh(b)
    # eigh sorts ascending; stable reversal keeps original order among ties
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    pivot = np.argmax(np.abs(v), axis=0)
    signs = np.sign(v[pivot, np.arange(v.shape[1])])
    signs[signs == 0] = 1.0
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v * signs)


def overlaps(dec: SpectralDecomposition, u: np.ndarray) -> OverlapVector:
    u = np.asarray(u, dtype=float)
    if u.shape != (dec.n,):
        raise ValueError(f"u has shape {u.shape}, expected ({dec.n},)")
    s = (dec.eigenvectors.T @ u) ** 2
    return OverlapVector(eigenvalues=dec.eigenvalues, s=s)


def quadratic_form(b: np.ndarray, u: np.ndarray, k: int) -> float:
    """``u^T B^k u`` by ``k`` matrix-vector products."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return float(u @ u)
    w = u
    for _ in range(k):
        w = b @ w
    return float(u @ w)


def top_count(c: float, n: int) -> int:
    """Number of leading eigenvalues in a top fraction ``c`` of ``n``."""
    if not 0 < c <= 1:
        raise ValueError(f"c must lie in (0, 1], got {c}")
    # the tiny slack absorbs c*n landing just below an integer
    return int(np.floor(c * n + 1e-9))


def energy_sum(ov: OverlapVector, c: float) -> float:
    """Sum of ``s_i`` over the ``floor(c N)`` largest eigenvalues."""
    return float(np.sum(ov.s[: top_count(c, ov.n)]))
