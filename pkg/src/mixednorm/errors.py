"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedFamilyError(ValueError):
    """The function family does not support the requested operation."""


class ToleranceNotReached(RuntimeError):
    """The evaluation budget was exhausted before meeting the tolerance."""

    def __init__(self, message: str, partial: float = float("nan")):
        super().__init__(message)
        self.partial = partial


class BranchMismatchError(ValueError):
    """An inclusion-branch tag was used with an operation it does not fit."""
