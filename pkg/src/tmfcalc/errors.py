"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: parse errors exit 2, domain errors exit 3.
"""


class TmfCalcError(Exception):
    """Base class for all library errors."""


class ParseError(TmfCalcError, ValueError):
    """An expression (manifold, monomial, q-series) could not be parsed."""


class DomainError(TmfCalcError, ValueError):
    """Inputs are well formed but outside an operation's domain."""


class InvalidParameter(DomainError):
    pass


class GenusMismatch(DomainError):
    """Gluing genus disagrees with the surfaces declared on an operand."""


class DegreeInconsistency(DomainError):
    """2(c_R - c_L) is not an integer, or a derived quantity is fractional."""


class NoFreePart(DomainError):
    """pi_d TMF has no Z[x] summand (d is not a multiple of 4)."""


class OutOfDomain(DomainError):
    """A fiber-sum formula was applied outside its stated degree range."""


class RuleViolation(DomainError):
    """Star-product rules produced a negative exponent."""


class PoleError(DomainError):
    """WZW level equals minus the dual Coxeter number."""


class NonIntegralCoefficient(TmfCalcError, ArithmeticError):
    """Exact series division left a remainder."""
