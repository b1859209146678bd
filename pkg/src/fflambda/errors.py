"""Exception hierarchy.

Layered so the command line can map failures onto its exit-code contract:
``ValidationError`` -> exit 2, ``SizeExceeded`` -> exit 3,
``VerificationFailure`` -> exit 4, any other ``FFError`` -> exit 1.
"""


class FFError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FFError):
    """Rejected user input (field spec, polynomial, curve, prime)."""


class NotPrime(ValidationError):
    pass


class EvenCharacteristic(ValidationError):
    """Characteristic-2 fields are not supported."""


class SizeExceeded(FFError):
    """An enumeration or table would exceed the configured machine bounds."""


class ContextMismatch(ValidationError):
    """Operands belong to different field contexts."""


class NoEmbedding(ValidationError):
    """The target field is not a subfield along the constructed tower."""


class ZeroPolynomial(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed polynomial or field string."""


class NotMonic(ValidationError):
    pass


class NotSquarefree(ValidationError):
    pass


class EvenDegree(ValidationError):
    pass


class DegreeTooSmall(ValidationError):
    pass


class FunctionalEquationViolation(FFError):
    """Internal consistency failure; signals an arithmetic bug."""


class IndexOutOfRange(FFError, IndexError):
    pass


class RootFindingFailure(FFError):
    """Numerical root finder did not converge."""


class NonIntegralCoefficient(FFError):
    """Newton-identity inversion produced a non-integer; signals a counting bug."""


class ProfileIncomplete(ValidationError):
    """A point-count profile is missing entries N_1..N_2g."""


class IndeterminateNearBoundary(FFError):
    """Sturm and eigenvalue root counts disagree within tolerance.

    Carries the bisection bracket when raised from inside a Lambda search.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class NonDivisible(FFError):
    """An exact division in the cyclotomic ring left a remainder."""


class NotRational(FFError):
    """A cyclotomic integer expected to be rational is not."""


class ClosedFormMismatch(FFError):
    """A Gauss sum disagrees with its closed form; signals a convention error."""


class BadReduction(ValidationError):
    """The prime divides the curve discriminant."""


class EvenPrime(ValidationError):
    pass


class HasseViolation(ValidationError):
    """A trace of Frobenius violates |a_p| <= 2*sqrt(p)."""


class NotSupersingular(ValidationError):
    pass


class Ramified(ValidationError):
    """The prime divides the quadratic discriminant."""


class VerificationFailure(FFError):
    """A verification suite failed."""
