"""Exception types for contract violations and budget refusals."""


class CMFieldsError(Exception):
    """Base class for all package-specific errors."""


class ClosureTooLarge(CMFieldsError):
    """Galois closure (or an internal splitting algebra) exceeds the desk-scale cap."""


class OrderMismatch(CMFieldsError):
    pass


class ZeroIdeal(CMFieldsError):
    pass


class ZeroElement(CMFieldsError):
    pass


class IndexDivisible(CMFieldsError):
    """prime_split refused: p divides the index of the equation order."""


class EnumerationBoundExceeded(CMFieldsError):
    """Lattice enumeration exhausted its budget; reported bound in args."""


class ConjugatesMissing(CMFieldsError):
    """The given field does not contain all conjugates of E."""


class RootNotExact(CMFieldsError):
    """The ideal to be rooted is not an exact power; indicates an implementation bug."""


class NonIntegralIdeal(CMFieldsError):
    pass


class CompositionMismatch(CMFieldsError):
    pass


class SourceMismatch(CMFieldsError):
    pass


class PairMismatch(CMFieldsError):
    pass


class SearchExhausted(CMFieldsError):
    """Bounded sign-correction search failed; bound reported in args."""


class UnitSearchInconclusive(CMFieldsError):
    """Equivalence undecided: infinite unit group and the bounded search found no witness."""


class BudgetExceeded(CMFieldsError):
    pass


class Supersingular(CMFieldsError):
    """The reduction is supersingular; no commutative CM Frobenius lift."""


class IdentificationFailed(CMFieldsError):
    """Frobenius endomorphism matching failed; model and CM data are inconsistent."""


class RamifiedPrime(CMFieldsError):
    pass


class UnitsUnavailable(CMFieldsError):
    pass


class ModulusTooLarge(CMFieldsError):
    pass


class NotCoprime(CMFieldsError):
    pass
