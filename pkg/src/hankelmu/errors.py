"""Exception hierarchy.  The CLI maps these onto exit codes."""


class HankelMuError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HankelMuError, ValueError):
    """An argument lies outside the domain of the function."""


class ParameterError(HankelMuError, ValueError):
    """A numerical parameter (sample count, block index, grid) is unusable."""


class PreconditionError(HankelMuError, ValueError):
    """An input violates a structural precondition (e.g. monotone coefficients)."""


class ConfigError(HankelMuError, ValueError):
    """An experiment configuration is malformed."""


class NumericFailure(HankelMuError, ArithmeticError):
    """A computation did not produce a trustworthy number."""


class DivergenceError(NumericFailure):
    """An integral or series does not converge."""


class IntegrabilityError(NumericFailure):
    """The integrand of the companion integral operator is not absolutely integrable."""


class ConvergenceError(NumericFailure):
    """An iteration hit its limit.  ``last`` holds the final iterate."""

    def __init__(self, message, last=None, iterations=None):
        super().__init__(message)
        self.last = last
        self.iterations = iterations


class HypothesisRefusal(HankelMuError):
    """An experiment was refused because a hypothesis of the statement fails.

    ``reason`` is a short machine-readable tag, ``details`` a dict echoed
    into the refusal report.
    """

    def __init__(self, reason, message, details=None):
        super().__init__(message)
        self.reason = reason
        self.details = details or {}
