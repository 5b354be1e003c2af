"""Exception types shared across the engine."""


class NuGrassError(Exception):
    """Base class for all engine errors."""


class ContextMismatchError(NuGrassError):
    """Operands live over different variable/generator contexts."""


class ZeroInverseError(NuGrassError):
    """Inversion of the zero rational function."""


class PoleAtPointError(NuGrassError):
    """Denominator vanishes at the evaluation point."""


class ParityError(NuGrassError):
    """Element does not have the parity an operation requires."""


class NotInvertibleError(NuGrassError):
    """Element has zero body and therefore no inverse."""


class ShapeMismatchError(NuGrassError):
    """Matrix shapes are incompatible."""


class NuOneSumError(NuGrassError):
    """A formal odd unit survived into a sum with nonzero terms."""


class SingularError(NuGrassError):
    """Matrix is not invertible over the generic point."""


class IndexRangeError(NuGrassError):
    """Row/column selection out of range."""


class BadIndexError(NuGrassError):
    """Chart index incompatible with the ambient space."""


class EmptyOverlapError(NuGrassError):
    """The generic overlap of two charts is empty."""


class NonInvertibleDenominatorError(NuGrassError):
    """A substituted denominator has identically zero body."""


class MixedParityEntryError(NuGrassError):
    """Matrix entry is not homogeneous."""


class SingularMinorError(NuGrassError):
    """Numeric minor is singular at the sampled point."""
