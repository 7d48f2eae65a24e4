"""Optimal tapered window as a quadratic program over the unit simplex.

With ``w = V p`` the smoothing loss becomes ``p^T Q~ p`` on the simplex, where
``Q~ = V~^T R V~``; equivalently ``r0 - 2 b^T p + p^T Q p`` with
``Q = V^T R V`` and ``b = V^T r``. :func:`solve` tries the unconstrained
minimiser, then the minimiser on the hyperplane ``sum(p) = 1``, and falls back
to projecting the origin onto the hull of the columns of ``sqrt(Q~)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import minnorm
from .errors import DegenerateQPError, InfeasibleError, SolverError
from .numerics import RANK_TOL, eig_sym, numerical_rank, solve_psd, sqrt_psd
from .polytope import VertexMatrix, vertex_matrices, window_from_mixture
from .signal import AutocorrStats, Signal, as_signal, autocorr_stats, loss_direct

STAGES = ("unconstrained", "equality", "projection", "grid-fallback")
FEAS_TOL = 1e-9
DEGENERATE_TOL = 1e-12
STATIONARY_TOL = 1e-8


def _sym(M):
    return 0.5 * (M + M.T)


@dataclass(frozen=True)
class ReducedQP:
    Q: np.ndarray
    b: np.ndarray
    Q_tilde: np.ndarray
    r0: float
    vm: VertexMatrix
    stats: AutocorrStats

    @property
    def k_eff(self) -> int:
        return self.b.size

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.r0)

    def objective(self, p) -> float:
        """Loss in mixture space via the ``Q, b`` form (includes the ``r0`` constant)."""
        p = np.asarray(p, dtype=float)
        return float(self.r0 - 2.0 * self.b @ p + p @ self.Q @ p)

    def tilde_objective(self, p) -> float:
        p = np.asarray(p, dtype=float)
        return float(p @ self.Q_tilde @ p)


def build_qp(y, k_eff: int | None = None) -> ReducedQP:
    y = as_signal(y)
    k = y.half_k
    if k_eff is None:
        k_eff = k
    if not 1 <= k_eff <= k:
        raise ValueError(f"K_eff must be in 1..{k}, got {k_eff}")
    stats = autocorr_stats(y)
    vm = vertex_matrices(k_eff, k)
    R = stats.r_mat
    Q = _sym(vm.V.T @ R @ vm.V)
    b = vm.V.T @ stats.r_vec
    Q_tilde = _sym(vm.V_tilde.T @ R @ vm.V_tilde)
    return ReducedQP(Q=Q, b=b, Q_tilde=Q_tilde, r0=stats.r0, vm=vm, stats=stats)


def unconstrained_minimizer(qp: ReducedQP, rank_tol: float = RANK_TOL) -> np.ndarray:
    return solve_psd(qp.Q, qp.b, rank_tol)


def _equality_parts(qp: ReducedQP, rank_tol: float):
    e = np.ones(qp.k_eff)
    p_q = solve_psd(qp.Q, qp.b, rank_tol)
    q_e = solve_psd(qp.Q, e, rank_tol)
    denom = float(e @ q_e)
    if denom < 1e-14 / qp.scale:
        raise DegenerateQPError(f"e^T Q^+ e = {denom:.3g} is too small")
    lam = (1.0 - e @ p_q) / denom
    return p_q + lam * q_e, float(lam)


def equality_minimizer(qp: ReducedQP, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Minimiser of the QP on the hyperplane ``sum(p) = 1`` (Lagrange multiplier form)."""
    return _equality_parts(qp, rank_tol)[0]


def equality_multiplier(qp: ReducedQP, rank_tol: float = RANK_TOL) -> float:
    return _equality_parts(qp, rank_tol)[1]


def equality_minimizer_tilde(qp: ReducedQP, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Same point computed from the min-norm form: ``Q~^+ e / (e^T Q~^+ e)``."""
    e = np.ones(qp.k_eff)
    u = solve_psd(qp.Q_tilde, e, rank_tol)
    s = float(e @ u)
    if s < 1e-14 / qp.scale:
        raise DegenerateQPError(f"e^T Q~^+ e = {s:.3g} is too small")
    return u / s


def in_simplex(p, tol: float = FEAS_TOL) -> bool:
    p = np.asarray(p, dtype=float)
    return bool(p.size and np.all(np.isfinite(p)) and p.min() >= -tol and abs(p.sum() - 1.0) <= tol)


def _project_simplex_noise(p):
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    return p / p.sum()


@dataclass
class SolverOptions:
    method: str = "auto"  # auto | closed | project
    feas_tol: float = FEAS_TOL
    rank_tol: float = RANK_TOL
    minnorm_tol: float = minnorm.DEFAULT_TOL
    max_iter: int | None = None

    def __post_init__(self):
        if self.method not in ("auto", "closed", "project"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class SolveReport:
    mixture: np.ndarray
    window: np.ndarray
    loss: float
    stage: str
    iterations: int = 0
    degenerate: bool = False
    n: int = 0
    k_eff: int = 0
    converged: bool = True
    diagnostics: dict = field(default_factory=dict)


def make_report(y: Signal, qp: ReducedQP, p, stage: str, iterations: int = 0,
                degenerate: bool = False, converged: bool = True, **diag) -> SolveReport:
    p = _project_simplex_noise(p)
    w = window_from_mixture(p, qp.vm)
    diag.setdefault("qp_loss", qp.tilde_objective(p))
    Qp = qp.Q_tilde @ p
    diag.setdefault("certificate_gap", float(p @ Qp - Qp.min()))
    return SolveReport(
        mixture=p, window=w, loss=loss_direct(y, w), stage=stage, iterations=iterations,
        degenerate=degenerate, n=y.n_len, k_eff=qp.k_eff, converged=converged, diagnostics=diag,
    )


def _stationary(qp, p, lam, tol):
    resid = qp.Q @ p - qp.b - lam
    return float(np.abs(resid).max()) <= tol * qp.scale


def project(qp: ReducedQP, opts: SolverOptions):
    """Projection route: min-norm point of the hull of the columns of ``sqrt(Q~)``."""
    A = sqrt_psd(qp.Q_tilde, opts.rank_tol)
    res = minnorm.min_norm_point(A, tol=opts.minnorm_tol, max_iter=opts.max_iter)
    return res, A


def solve(y, k_eff: int | None = None, opts: SolverOptions | None = None) -> SolveReport:
    y = as_signal(y)
    opts = opts or SolverOptions()
    qp = build_qp(y, k_eff)
    k = qp.k_eff
    degenerate = numerical_rank(qp.Q_tilde, opts.rank_tol) < k
    lam_max = eig_sym(qp.Q_tilde)[0][0]
    if lam_max <= DEGENERATE_TOL * qp.scale:
        # every simplex point attains the same loss
        return make_report(y, qp, np.full(k, 1.0 / k), "equality", degenerate=True)

    if opts.method != "project":
        p_q = unconstrained_minimizer(qp, opts.rank_tol)
        if in_simplex(p_q, opts.feas_tol) and _stationary(qp, p_q, 0.0, STATIONARY_TOL):
            return make_report(y, qp, p_q, "unconstrained", degenerate=degenerate)
        try:
            p_l, lam = _equality_parts(qp, opts.rank_tol)
        except DegenerateQPError:
            degenerate = True
        else:
            if in_simplex(p_l, opts.feas_tol) and _stationary(qp, p_l, lam, STATIONARY_TOL):
                return make_report(y, qp, p_l, "equality", degenerate=degenerate, multiplier=lam)
        if opts.method == "closed":
            raise InfeasibleError("closed-form minimisers fall outside the simplex")

    try:
        res, _ = project(qp, opts)
    except SolverError as exc:
        exc.report = make_report(y, qp, exc.coefficients, "projection", exc.iterations,
                                 degenerate=degenerate, converged=False)
        raise
    return make_report(y, qp, res.coefficients, "projection", res.iterations,
                       degenerate=degenerate, corral_rank_deficient=res.rank_deficient)
