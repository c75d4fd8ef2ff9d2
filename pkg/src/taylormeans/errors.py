"""Exception hierarchy shared by every module in the package."""


class TaylorMeanError(Exception):
    """Base class for all package errors."""


class PreconditionError(TaylorMeanError, ValueError):
    """Input violates an operation's documented precondition."""


class DomainError(PreconditionError):
    """Evaluation point outside (0, inf)."""


class ZeroPolynomial(PreconditionError):
    pass


class EndpointRoot(PreconditionError):
    """Polynomial vanishes at an interval endpoint."""


class SignChange(PreconditionError):
    """The density f^(r+1) vanishes or changes sign on [a, b]."""


class ExcludedExponent(SignChange):
    """Power exponent for which the density f^(r+1) vanishes identically."""


class NotDivisible(TaylorMeanError, ArithmeticError):
    """Exact deflation left a nonzero remainder."""


class SignViolation(TaylorMeanError):
    """A claimed coefficient or value sign pattern does not hold."""


class MismatchError(TaylorMeanError):
    """Two independent constructions of the same object disagree."""


class NoConvergence(TaylorMeanError, ArithmeticError):
    pass


class UnpairedRoot(TaylorMeanError):
    """A nonreal root has no conjugate partner within tolerance."""


class QuadratureError(TaylorMeanError, ArithmeticError):
    """Adaptive quadrature hit its subdivision cap."""
