"""Exception hierarchy for torusdet."""


class TorusDetError(Exception):
    """Base class for all torusdet errors."""


class DomainError(TorusDetError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class TolUnreachable(TorusDetError, ArithmeticError):
    """The requested absolute tolerance cannot be met within max_terms."""


class UnsupportedKind(TorusDetError, ValueError):
    """The theta-function selector is not valid for this operation."""


class UnsupportedOrder(TorusDetError, ValueError):
    """The derivative order is not available for this theta kind."""


class HypothesisFailed(TorusDetError, ValueError):
    """The premise identity of the generalized Jacobi lemma does not hold
    for the supplied (f, g, r) triple."""


class BadInterval(TorusDetError, ValueError):
    """The search interval does not bracket the critical point."""


class QuadratureFailure(TorusDetError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class UnknownCurve(TorusDetError, ValueError):
    """The named scan curve is not registered."""
