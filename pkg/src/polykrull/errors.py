"""Exception hierarchy.

Every domain failure is a subclass of :class:`DomainError`; the CLI reports
the class name verbatim and exits with status 3 (2 for :class:`ParseError`,
which is bad input rather than a mathematical failure).
"""


class DomainError(ValueError):
    """Base class for all mathematical/domain errors raised by the library."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ParseError(DomainError):
    pass


class NotPrime(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class CannotCertify(DomainError):
    pass


class RootsNotIntegral(DomainError):
    pass


class ResidueNotPurePower(DomainError):
    pass


class MultiplicityNotDivisible(DomainError):
    pass


class DegreeOneCenter(DomainError):
    pass


class InsufficientPrecision(DomainError):
    pass


class RadiusExceedsPrecision(DomainError):
    pass


class CenterNotIntegral(DomainError):
    pass


class NegativeRadius(DomainError):
    pass


class AlgebraicAtInfinity(DomainError):
    pass


class MinimalPairUnknown(DomainError):
    pass


class DifferentPrime(DomainError):
    pass


class RuleNotDecidable(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class PoolTooSmall(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class ConstructionFailed(DomainError):
    pass


class NotKrull(DomainError):
    pass
