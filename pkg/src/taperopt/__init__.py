"""Optimal symmetric tapered weighted-moving-average windows."""
from .errors import (
    DegenerateQPError,
    EvenLengthError,
    InfeasibleError,
    NotPSDError,
    NumericalError,
    OracleGuardError,
    SignalError,
    SolverError,
    TaperOptError,
    WindowError,
)
from .minnorm import affine_min_norm, min_norm_point
from .numerics import eig_sym, solve_psd, sqrt_psd
from .oracle import GridSpec, face_enumeration, grid_search
from .polytope import (
    mixture_from_window,
    validate_window,
    vertex,
    vertex_matrices,
    window_from_mixture,
)
from .qp import (
    SolveReport,
    SolverOptions,
    build_qp,
    equality_minimizer,
    in_simplex,
    solve,
    unconstrained_minimizer,
)
from .signal import (
    AutocorrStats,
    Signal,
    apply_window,
    autocorr_stats,
    autocorrelation,
    cyclic_get,
    loss_direct,
    shift_matrix,
)

__version__ = "0.1.0"
