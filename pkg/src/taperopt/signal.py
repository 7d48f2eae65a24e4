"""Cyclic signals, their autocorrelation, and the direct smoothing loss.

Windows are stored as arrays of length ``2K+1`` where position ``j`` holds
the weight for offset ``k = j - K``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EvenLengthError, SignalError, WindowError

SIMPLEX_SUM_TOL = 1e-9
NONNEG_TOL = 1e-12


@dataclass(frozen=True)
class Signal:
    values: np.ndarray
    n_len: int = field(init=False)
    half_k: int = field(init=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 3:
            raise SignalError(f"signal length must be at least 3 (got {v.size})")
        if v.size % 2 == 0:
            raise EvenLengthError("signal length must be odd")
        if not np.all(np.isfinite(v)):
            bad = int(np.flatnonzero(~np.isfinite(v))[0])
            raise SignalError(f"non-finite sample {v[bad]!r} at position {bad + 1}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "n_len", int(v.size))
        object.__setattr__(self, "half_k", int((v.size - 1) // 2))

    def __len__(self):
        return self.n_len

    def reversed(self) -> "Signal":
        return Signal(self.values[::-1])


def as_signal(y) -> Signal:
    return y if isinstance(y, Signal) else Signal(y)


def cyclic_get(y, n: int) -> float:
    """Return ``y_n`` for any integer ``n`` using 1-based cyclic indexing."""
    y = as_signal(y)
    return float(y.values[(n - 1) % y.n_len])


def autocorrelation(y, t: int) -> float:
    y = as_signal(y)
    return float(y.values @ np.roll(y.values, -t))


@dataclass(frozen=True)
class AutocorrStats:
    r_vec: np.ndarray  # offsets -K..K
    r_mat: np.ndarray  # (2K+1, 2K+1), entry (i, j) = r_{j-i}

    @property
    def half_k(self) -> int:
        return (self.r_vec.size - 1) // 2

    @property
    def r0(self) -> float:
        return float(self.r_vec[self.half_k])

    def r(self, t: int) -> float:
        """Autocorrelation at lag ``t`` (any integer), using period ``N``."""
        n = self.r_vec.size
        k = self.half_k
        return float(self.r_vec[(t + k) % n])


def autocorr_stats(y) -> AutocorrStats:
    y = as_signal(y)
    k = y.half_k
    # one full period of lags; every other lag follows from periodicity
    lags = np.array([autocorrelation(y, t) for t in range(-k, k + 1)])
    n = y.n_len
    offsets = np.arange(-k, k + 1)
    diff = offsets[None, :] - offsets[:, None]
    r_mat = lags[(diff + k) % n]
    return AutocorrStats(r_vec=lags, r_mat=r_mat)


def shift_matrix(y) -> np.ndarray:
    """Columns are ``y`` cyclically advanced by offsets ``-K..K``.

    ``shift_matrix(y) @ w`` is the smoothed signal, and its Gram matrix is
    the autocorrelation matrix.
    """
    y = as_signal(y)
    k = y.half_k
    return np.column_stack([np.roll(y.values, -off) for off in range(-k, k + 1)])


def check_simplex_window(w, n_len: int) -> np.ndarray:
    w = np.asarray(w, dtype=float).ravel()
    if w.size != n_len:
        raise WindowError(f"window length {w.size} does not match signal length {n_len}")
    if not np.all(np.isfinite(w)):
        raise WindowError("window has non-finite entries")
    if w.min() < -NONNEG_TOL:
        raise WindowError(f"window has negative entry {w.min():.3g}")
    if abs(w.sum() - 1.0) > SIMPLEX_SUM_TOL:
        raise WindowError(f"window sums to {w.sum():.12g}, not 1")
    return w


def apply_window(y, w) -> np.ndarray:
    """Cyclic weighted mean ``x_n = sum_k w_k y_{n+k}``."""
    y = as_signal(y)
    w = check_simplex_window(w, y.n_len)
    k = y.half_k
    x = np.zeros(y.n_len)
    for j, off in enumerate(range(-k, k + 1)):
        if w[j] != 0.0:
            x += w[j] * np.roll(y.values, -off)
    return x


def loss_direct(y, w) -> float:
    y = as_signal(y)
    resid = y.values - apply_window(y, w)
    return float(resid @ resid)


def loss_quadratic(stats: AutocorrStats, w) -> float:
    """``r0 - 2 w.r + w.R.w``; equals :func:`loss_direct` for simplex windows."""
    w = np.asarray(w, dtype=float)
    return float(stats.r0 - 2.0 * w @ stats.r_vec + w @ stats.r_mat @ w)


def identity_window(half_k: int) -> np.ndarray:
    w = np.zeros(2 * half_k + 1)
    w[half_k] = 1.0
    return w
