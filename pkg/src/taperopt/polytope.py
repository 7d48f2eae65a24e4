"""Vertex parameterisation of symmetric, tapered, zero-centre windows.

The admissible windows are exactly the convex hull of the K "box" windows
``v_i`` that put ``1/(2i)`` on every offset ``1 <= |k| <= i``. A window is
therefore ``V @ p`` for a probability vector ``p`` of length K.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import WindowError

MAX_HALF_WIDTH = 10**6
DEFAULT_TOL = 1e-9


def vertex(i: int, half_k: int) -> np.ndarray:
    if not 1 <= half_k <= MAX_HALF_WIDTH:
        raise WindowError(f"half width must be in [1, {MAX_HALF_WIDTH}], got {half_k}")
    if not 1 <= i <= half_k:
        raise WindowError(f"vertex index {i} outside 1..{half_k}")
    offsets = np.abs(np.arange(-half_k, half_k + 1))
    return np.where((offsets >= 1) & (offsets <= i), 1.0 / (2 * i), 0.0)


@dataclass(frozen=True)
class VertexMatrix:
    V: np.ndarray        # (2K+1, K_eff)
    V_tilde: np.ndarray  # v0 e^T - V

    @property
    def half_k(self) -> int:
        return (self.V.shape[0] - 1) // 2

    @property
    def k_eff(self) -> int:
        return self.V.shape[1]


def vertex_matrices(k_eff: int, half_k: int | None = None) -> VertexMatrix:
    """Vertex matrix for the first ``k_eff`` vertices laid out over offsets
    ``-half_k..half_k`` (``half_k`` defaults to ``k_eff``; larger values pad
    every column with trailing zeros)."""
    if half_k is None:
        half_k = k_eff
    if k_eff < 1:
        raise WindowError(f"need at least one vertex, got K={k_eff}")
    if k_eff > half_k:
        raise WindowError(f"K_eff={k_eff} exceeds half width {half_k}")
    V = np.column_stack([vertex(i, half_k) for i in range(1, k_eff + 1)])
    v0 = np.zeros(2 * half_k + 1)
    v0[half_k] = 1.0
    V_tilde = v0[:, None] - V
    return VertexMatrix(V=V, V_tilde=V_tilde)


def window_from_mixture(p, vm: VertexMatrix) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size != vm.k_eff:
        raise WindowError(f"mixture has length {p.size}, expected {vm.k_eff}")
    return vm.V @ p


@dataclass
class WindowCheck:
    valid: bool
    violations: list[str] = field(default_factory=list)

    @property
    def first(self) -> str | None:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.valid


def validate_window(w, tol: float = DEFAULT_TOL) -> WindowCheck:
    """Check centre-zero, symmetry, tapering, nonnegativity and unit sum.

    Every violated condition is listed, in that order.
    """
    w = np.asarray(w, dtype=float).ravel()
    if w.size < 3 or w.size % 2 == 0:
        return WindowCheck(False, [f"length {w.size} is not odd and >= 3"])
    if not np.all(np.isfinite(w)):
        return WindowCheck(False, ["non-finite weights"])
    k = (w.size - 1) // 2
    right = w[k + 1:]
    left = w[:k][::-1]
    out = []
    if abs(w[k]) > tol:
        out.append(f"center weight nonzero ({w[k]:.3g})")
    asym = np.abs(right - left)
    if asym.max() > tol:
        j = int(np.argmax(asym > tol)) + 1
        out.append(f"symmetry violated at offset {j} ({w[k + j]:.3g} vs {w[k - j]:.3g})")
    for half, sign in ((right, ""), (left, "-")):
        rises = np.diff(half)
        if rises.size and rises.max() > tol:
            j = int(np.argmax(rises > tol)) + 1
            out.append(f"tapering violated (w{sign}{j + 1} > w{sign}{j})")
    if w.min() < -tol:
        out.append(f"negative weight ({w.min():.3g})")
    if abs(w.sum() - 1.0) > tol:
        out.append(f"weights sum to {w.sum():.12g}")
    return WindowCheck(not out, out)


def mixture_from_window(w, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Invert :func:`window_from_mixture` via ``p_i = 2i (w_i - w_{i+1})``."""
    check = validate_window(w, tol)
    if not check:
        raise WindowError("; ".join(check.violations))
    w = np.asarray(w, dtype=float).ravel()
    k = (w.size - 1) // 2
    right = np.append(w[k + 1:], 0.0)
    i = np.arange(1, k + 1)
    return 2.0 * i * (right[:-1] - right[1:])
