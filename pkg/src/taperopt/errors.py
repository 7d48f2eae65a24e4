"""Exception hierarchy shared by the solver modules and the CLI."""


class TaperOptError(Exception):
    pass


class SignalError(TaperOptError, ValueError):
    """Input signal is unusable (wrong length, non-finite samples, ...)."""


class EvenLengthError(SignalError):
    pass


class WindowError(TaperOptError, ValueError):
    pass


class NumericalError(TaperOptError):
    """A dense decomposition failed to converge."""


class NotPSDError(NumericalError):
    pass


class DegenerateQPError(TaperOptError):
    pass


class InfeasibleError(TaperOptError):
    """Closed-form stages produced no point on the simplex."""


class SolverError(TaperOptError):
    """Iterative solver gave up; carries the best iterate found."""

    def __init__(self, message, x=None, coefficients=None, gap=None, iterations=0):
        super().__init__(message)
        self.x = x
        self.coefficients = coefficients
        self.gap = gap
        self.iterations = iterations


class OracleGuardError(TaperOptError):
    pass
