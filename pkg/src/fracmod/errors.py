"""Exception types shared across the library."""


class FracmodError(Exception):
    """Base class for all library errors."""


class DomainError(FracmodError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(FracmodError, OverflowError):
    """The mathematically correct result is not representable."""


class SamplingError(FracmodError, ValueError):
    """A closed-form function evaluated to a non-finite value on the grid."""


class ConstructionError(FracmodError, ValueError):
    """A derived object violates one of its invariants."""


class DegenerateFitError(FracmodError, ValueError):
    """A regression cannot be performed on the supplied data."""
