"""Exception types shared across the package."""


class FracratError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FracratError):
    """A precondition or a parameter-range invariant was violated."""


class DegenerateMathError(FracratError):
    """A construction degenerated: zero polynomial, expansion point with no
    series, ladder element with no affine value, and the like."""


class ExactDivisionError(FracratError):
    """Exact polynomial division was requested but the divisor does not
    divide the dividend."""


class RankDeficiencyError(FracratError):
    """Linear system is rank-deficient but consistent.

    `defect` is the dimension of the solution space (unknowns minus rank).
    """

    def __init__(self, defect: int, message: str | None = None):
        super().__init__(message or f"rank-deficient system, defect {defect}")
        self.defect = defect


class InconsistentSystemError(FracratError):
    """Rank-deficient system whose right-hand side is not in the column
    space: no solution exists."""
