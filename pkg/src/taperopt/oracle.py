"""Brute-force reference solvers for small instances.

Neither routine shares code with the solver cascade beyond building the QP
data: the grid search evaluates the smoothing loss directly from shifted
copies of the signal, and the face enumeration solves a bordered KKT system
on every support pattern with an SVD least-squares solve.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OracleGuardError
from .polytope import vertex_matrices
from .qp import ReducedQP
from .signal import as_signal, shift_matrix

GRID_LIMIT = 10**7
FACE_LIMIT = 20
BATCH = 50_000


@dataclass(frozen=True)
class GridSpec:
    resolution: int

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("grid resolution must be positive")

    def count(self, k: int) -> int:
        return math.comb(self.resolution + k - 1, k - 1)


@dataclass
class OracleResult:
    p: np.ndarray
    loss: float
    evaluated: int


def compositions(total: int, parts: int):
    """All nonnegative integer vectors of length ``parts`` summing to ``total``,
    in ascending lexicographic order."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield out


@lru_cache(maxsize=None)
def _full_grid(total: int, parts: int) -> np.ndarray:
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        rest = _full_grid(total - first, parts - 1)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def grid_blocks(total: int, parts: int, batch: int = BATCH, prefix=()):
    """Yield the compositions of :func:`compositions` as integer arrays of at
    most ``batch`` rows (or single prefix blocks), preserving lexicographic order."""
    if math.comb(total + parts - 1, parts - 1) <= batch or parts == 1:
        grid = _full_grid(total, parts)
        head = np.broadcast_to(np.asarray(prefix, dtype=np.int64), (len(grid), len(prefix)))
        yield np.hstack([head, grid])
        return
    for first in range(total + 1):
        yield from grid_blocks(total - first, parts - 1, batch, prefix + (first,))


def grid_search(y, k_eff: int | None = None, grid: GridSpec | int = 50) -> OracleResult:
    y = as_signal(y)
    if k_eff is None:
        k_eff = y.half_k
    if not 1 <= k_eff <= y.half_k:
        raise ValueError(f"K_eff must be in 1..{y.half_k}, got {k_eff}")
    if isinstance(grid, int):
        grid = GridSpec(grid)
    size = grid.count(k_eff)
    if size > GRID_LIMIT:
        raise OracleGuardError(f"grid has {size} points, limit is {GRID_LIMIT}")

    V = vertex_matrices(k_eff, y.half_k).V
    Z = shift_matrix(y)
    r0 = float(y.values @ y.values)
    tie = 1e-12 * (1.0 + r0)
    best_p, best_loss = None, np.inf
    for block in grid_blocks(grid.resolution, k_eff):
        P = block / grid.resolution
        X = (P @ V.T) @ Z.T  # smoothed signals, one row per grid point
        resid = y.values[None, :] - X
        losses = np.einsum("ij,ij->i", resid, resid)
        i = int(np.argmin(losses))
        # blocks arrive in lexicographic order, so earlier winners keep ties
        if losses[i] < best_loss - tie:
            first = int(np.flatnonzero(losses <= losses[i] + tie)[0])
            best_p, best_loss = P[first], float(losses[first])
    return OracleResult(best_p, best_loss, size)


def grid_error_bound(qp: ReducedQP, resolution: int) -> float:
    """Upper bound on ``grid loss - true loss`` at a given resolution.

    Rounding the optimum to the grid moves it by ``d`` with ``|d|_1 <= K/res``,
    and the loss changes by at most ``max|Q~| (2|d|_1 + |d|_1^2)``.
    """
    delta = qp.k_eff / resolution
    return float(np.abs(qp.Q_tilde).max() * (2.0 * delta + delta**2))


def face_enumeration(qp: ReducedQP, feas_tol: float = 1e-10) -> OracleResult:
    """Exact minimiser by checking the Lagrange stationary point on every face.

    For each support set S, solve ``[[Q_S, -e], [e^T, 0]] [p; mu] = [b_S; 1]``;
    inconsistent (singular) systems are skipped, feasible candidates are scored
    with the ``Q, b`` objective, and the lexicographically first support wins
    ties.
    """
    k = qp.k_eff
    if k > FACE_LIMIT:
        raise OracleGuardError(f"face enumeration over 2^{k} supports refused (K > {FACE_LIMIT})")
    tie = 1e-12 * qp.scale
    best_p, best_loss, count = None, np.inf, 0
    supports = sorted(
        s for m in range(1, k + 1) for s in itertools.combinations(range(k), m)
    )
    for support in supports:
        idx = list(support)
        m = len(idx)
        A = np.zeros((m + 1, m + 1))
        A[:m, :m] = qp.Q[np.ix_(idx, idx)]
        A[:m, m] = -1.0
        A[m, :m] = 1.0
        rhs = np.append(qp.b[idx], 1.0)
        sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
        if np.abs(A @ sol - rhs).max() > 1e-9 * qp.scale:
            continue
        count += 1
        p_s = sol[:m]
        if p_s.min() < -feas_tol:
            continue
        p = np.zeros(k)
        p[idx] = np.clip(p_s, 0.0, None)
        p /= p.sum()
        loss = max(qp.objective(p), 0.0)
        if loss < best_loss - tie:
            best_p, best_loss = p, loss
    return OracleResult(best_p, best_loss, count)
