"""Dense symmetric linear algebra: eigendecomposition, pseudo-inverse solve,
and the PSD square root. Problem sizes are at most a few hundred, so
everything goes through a single LAPACK ``eigh`` call."""
from __future__ import annotations

import numpy as np

from .errors import NotPSDError, NumericalError

RANK_TOL = 1e-10


def _as_symmetric(S) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {S.shape}")
    if not np.all(np.isfinite(S)):
        raise ValueError("matrix has non-finite entries")
    # upper triangle is authoritative
    return np.triu(S) + np.triu(S, 1).T


def eig_sym(S):
    """Eigenvalues in descending order and matching orthonormal eigenvectors."""
    S = _as_symmetric(S)
    try:
        lam, U = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver did not converge: {exc}") from exc
    return lam[::-1].copy(), U[:, ::-1].copy()


def _checked_spectrum(S, tol):
    lam, U = eig_sym(S)
    scale = max(lam[0], 0.0) if lam.size else 0.0
    if lam.size and lam[-1] < -tol * scale:
        raise NotPSDError(f"matrix is not PSD: smallest eigenvalue {lam[-1]:.3g}, largest {lam[0]:.3g}")
    return lam, U, scale


def numerical_rank(S, rank_tol: float = RANK_TOL) -> int:
    lam, _ = eig_sym(S)
    if lam.size == 0 or lam[0] <= 0:
        return 0
    return int(np.sum(lam > rank_tol * lam[0]))


def solve_psd(S, c, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Minimum-norm solution of ``S x = c`` for symmetric PSD ``S``.

    Eigenvalues at or below ``rank_tol * lambda_max`` are treated as zero.
    """
    lam, U, scale = _checked_spectrum(S, rank_tol)
    c = np.asarray(c, dtype=float)
    keep = lam > rank_tol * scale if scale > 0 else np.zeros(lam.size, dtype=bool)
    inv = np.zeros_like(lam)
    inv[keep] = 1.0 / lam[keep]
    return U @ (inv * (U.T @ c))


def sqrt_psd(S, clip_tol: float = RANK_TOL) -> np.ndarray:
    """Symmetric ``A`` with ``A @ A == S``; tiny negative eigenvalues are clipped."""
    lam, U, _ = _checked_spectrum(S, clip_tol)
    A = (U * np.sqrt(np.maximum(lam, 0.0))) @ U.T
    return np.triu(A) + np.triu(A, 1).T
