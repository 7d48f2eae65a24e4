"""Minimum-norm point of the convex hull of a finite point set.

Wolfe's major/minor cycle method. Points are the *columns* of a ``(d, K)``
array. Besides the point itself, the convex coefficients over all K points
are returned so callers can map the answer back to their own parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import SolverError
from .numerics import solve_psd

DEFAULT_TOL = 1e-10
# barycentric coefficients at or below this count as "not strictly positive"
COEF_EPS = 1e-12


def default_max_iter(k: int) -> int:
    return max(16 * k * k, 1000)


class AffineMinNorm(NamedTuple):
    point: np.ndarray
    coefficients: np.ndarray
    rank_deficient: bool


def affine_min_norm(points) -> AffineMinNorm:
    """Minimum-norm point of the affine hull of the columns of ``points``.

    Minimising ``a^T G a`` subject to ``sum(a) = 1`` is the same as minimising
    ``a^T (G + e e^T) a`` on that hyperplane, whose stationary point is
    proportional to ``(G + e e^T)^+ e``. The augmented Gram matrix is PSD, and
    ``e`` always lies in its range, so the pseudo-inverse gives a true
    stationary point even for affinely dependent sets.
    """
    S = np.asarray(points, dtype=float)
    if S.ndim == 1:
        S = S[:, None]
    m = S.shape[1]
    if m == 0:
        raise ValueError("affine_min_norm needs at least one point")
    if m == 1:
        return AffineMinNorm(S[:, 0].copy(), np.ones(1), False)
    G = S.T @ S
    M = G + 1.0
    e = np.ones(m)
    a = solve_psd(M, e)
    a /= a.sum()
    lam = np.linalg.eigvalsh(M)
    deficient = bool(lam[0] <= 1e-10 * lam[-1])
    return AffineMinNorm(S @ a, a, deficient)


@dataclass
class MinNormResult:
    x: np.ndarray
    coefficients: np.ndarray
    iterations: int
    gap: float
    norm_history: list = field(default_factory=list)
    rank_deficient: bool = False

    @property
    def sq_norm(self) -> float:
        return float(self.x @ self.x)


def certificate_gap(x, points) -> float:
    """``||x||^2 - min_j <x, p_j>``; nonpositive at the exact minimiser."""
    P = np.asarray(points, dtype=float)
    return float(x @ x - np.min(x @ P))


def _spread(corral, lam, k):
    """Scatter corral weights into a full-length simplex vector."""
    coef = np.zeros(k)
    coef[corral] = np.clip(lam, 0.0, None)
    return coef / coef.sum()


def min_norm_point(points, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> MinNormResult:
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    d, k = P.shape
    if k < 1 or not np.all(np.isfinite(P)):
        raise ValueError("need at least one finite point")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter is None:
        max_iter = default_max_iter(k)
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    sq = np.einsum("ij,ij->j", P, P)
    slack = tol * (1.0 + sq.max())
    # argmin returns the first (smallest-index) minimiser on ties
    start = int(np.argmin(sq))
    corral = [start]
    lam = np.ones(1)
    x = P[:, start].copy()
    history = [float(np.sqrt(x @ x))]
    deficient = False

    for it in range(1, max_iter + 1):
        dots = x @ P
        j = int(np.argmin(dots))
        if dots[j] >= x @ x - slack or j in corral:
            coef = _spread(corral, lam, k)
            x = P @ coef
            return MinNormResult(x, coef, it - 1, certificate_gap(x, P), history, deficient)
        prev_sq = float(x @ x)
        corral.append(j)
        lam = np.append(lam, 0.0)

        while True:
            aff = affine_min_norm(P[:, corral])
            deficient = deficient or aff.rank_deficient
            alpha = aff.coefficients
            if np.all(alpha > COEF_EPS):
                lam = alpha
                x = aff.point
                break
            # step from lam toward alpha until the first coefficient hits zero
            neg = alpha <= COEF_EPS
            denom = lam[neg] - alpha[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0, lam[neg] / denom, np.inf)
            theta = float(min(1.0, ratios.min()))
            lam = lam + theta * (alpha - lam)
            hit = np.flatnonzero(lam <= COEF_EPS)
            if hit.size == 0:
                hit = np.flatnonzero(neg)[[int(np.argmin(ratios))]]
            # drop the blocking point with the smallest original index
            drop = min(hit, key=lambda pos: corral[pos])
            del corral[drop]
            lam = np.delete(lam, drop)
            lam = np.clip(lam, 0.0, None)
            lam /= lam.sum()
            x = P[:, corral] @ lam
        if j not in corral and float(x @ x) >= prev_sq:
            # rounding rejected the entering point: no further progress possible
            coef = _spread(corral, lam, k)
            x = P @ coef
            return MinNormResult(x, coef, it, certificate_gap(x, P), history, deficient)
        history.append(float(np.sqrt(x @ x)))

    coef = _spread(corral, lam, k)
    x = P @ coef
    raise SolverError(
        f"minimum-norm point did not converge in {max_iter} iterations",
        x=x, coefficients=coef, gap=certificate_gap(x, P), iterations=max_iter,
    )
