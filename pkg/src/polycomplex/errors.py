"""Shared exception types."""


class PolyComplexError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(PolyComplexError):
    """An operation was called on inputs that violate its contract."""


class GroupTooLargeError(PolyComplexError):
    """Element enumeration would exceed the declared size limit."""


class OrbitBudgetError(PolyComplexError):
    """Orbit expansion exceeded the configured face budget."""


class ConstructionError(PolyComplexError):
    """A catalog entry or coset complex failed its verification suite."""


class FaithfulnessError(PolyComplexError):
    """A realization was requested for a complex whose faces are not
    determined by their sub-faces."""

    def __init__(self, rank, first, second):
        self.witness = (rank, first, second)
        super().__init__(
            f"two {rank}-faces share the same ({rank - 1})-face set: {first}, {second}"
        )


class FormatError(PolyComplexError):
    """A file did not conform to its declared text format."""


class CrossCheckError(PolyComplexError):
    """Two formulations that must agree disagreed; indicates a bug."""
