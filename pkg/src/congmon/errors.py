"""Exception types shared across the package."""


class CongmonError(Exception):
    """Base class for all package errors."""


class SpecParseError(CongmonError):
    """A field/modulus/element/gamma spec string failed to parse or validate."""


class PreconditionError(CongmonError):
    """An operation was called with inputs violating its contract."""


class NotCoprimeError(PreconditionError):
    """Element shares a prime with the finite part of the modulus."""


class NotInKmError(PreconditionError):
    """Fraction has a nonzero valuation at a prime of the modulus support."""


class NotInKmGammaError(PreconditionError):
    """Fraction is not in the quotient group of the congruence monoid."""


class NonCoprimeModuliError(PreconditionError):
    """CRT moduli are not pairwise coprime."""


class FactorBoundExceededError(CongmonError):
    """A norm has a prime factor beyond the trial-division bound."""

    def __init__(self, n, bound):
        super().__init__(f"cofactor {n} has no prime factor <= {bound}")
        self.n = n
        self.bound = bound


class SearchBoundExceededError(CongmonError):
    """A bounded search ran out of budget before finding a witness."""


class ScaleExceededError(CongmonError):
    """Instance is beyond the supported desk scale."""


class ContextMismatchError(PreconditionError):
    """Operands carry different (field, modulus, subgroup) contexts."""
