"""Exception types shared across the library."""


class PosetHopfError(Exception):
    """Base class for all library errors."""


class CycleDetected(PosetHopfError):
    """The input relation contains a directed cycle, so it is not a partial order."""


class SizeExceeded(PosetHopfError):
    """Poset size beyond the configured cap."""


class SizeMismatch(PosetHopfError):
    """Operand sizes incompatible (e.g. child must have exactly one more element)."""


class NotAForest(PosetHopfError):
    """Operation requires a forest (every element covers at most one element)."""


class DomainError(PosetHopfError):
    """Argument outside the operation's domain."""


class InexactDivision(PosetHopfError):
    """Polynomial division left a nonzero remainder."""


class NonzeroConstantTerm(PosetHopfError):
    """Series composition requires the inner series to vanish at 0."""


class IndexOutOfRange(PosetHopfError):
    """Coupling or series index outside the valid range."""


class ZeroModel(PosetHopfError):
    """Growth model cannot be normalised (zero total weight or missing initial data)."""


class NonHomogeneous(PosetHopfError):
    """Input vector mixes posets of different cardinalities."""
