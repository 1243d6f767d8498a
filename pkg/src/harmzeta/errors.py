"""Exception hierarchy shared by every module of the package."""


class HarmzetaError(Exception):
    """Base class for all package errors."""


class DomainError(HarmzetaError, ValueError):
    """An argument lies outside the real domain where a function is defined."""


class DiskViolation(DomainError):
    """A power-series argument lies outside its disk of convergence."""


class ToleranceUnreachable(HarmzetaError, ArithmeticError):
    """The truncation policy cannot certify the requested tolerance.

    ``best`` carries the partial result reached before giving up, when any.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NonConvergence(HarmzetaError, ArithmeticError):
    """Quadrature hit its level cap without meeting the tolerance."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class TailBoundViolation(HarmzetaError, ArithmeticError):
    """A caller-supplied tail bound exceeds the tolerance it must certify."""


class ConstantsMismatch(HarmzetaError, RuntimeError):
    """A stored constant disagrees with the implementation that should reproduce it."""
