"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live on different qudit dimensions or counts."""


class NotAStabilizerGroup(ValueError):
    """A generated group contains a nontrivial phase times the identity."""


class NotCleanable(ValueError):
    """A nontrivial logical operator is supported inside the given region."""


class InfeasibleSyndrome(ValueError):
    """No Pauli operator attains the requested syndrome."""


class UnsupportedDimension(ValueError):
    """The operation is only defined for prime qudit dimension."""


class CorrectabilityNotGuaranteed(ValueError):
    """The erasure pattern falls outside the guaranteed-correctable regime."""


class TooManyErasures(ValueError):
    """More erasures than the code distance allows."""


class InvalidSyndrome(ValueError):
    """A syndrome record contains invalid (loss-corrupted) entries."""


class BasisMismatch(ValueError):
    """Two generator lists do not generate the same group."""


class OracleBudgetExceeded(RuntimeError):
    """A brute-force search exceeded its configured budget."""
