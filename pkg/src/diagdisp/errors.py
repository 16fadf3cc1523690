"""Exception hierarchy shared across the package."""


class DiagDispError(Exception):
    """Base class for all package errors."""


class DomainError(DiagDispError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(DiagDispError, RuntimeError):
    """A root bracket is invalid or an iteration failed to converge."""


class PreconditionError(DiagDispError, ValueError):
    """A documented precondition of the call does not hold."""


class DimensionMismatch(DiagDispError, ValueError):
    """Box and points (or points among themselves) disagree on dimension."""


class BudgetExceeded(DiagDispError):
    """The oracle enumeration would exceed the candidate budget."""

    def __init__(self, estimate, budget):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"estimated {estimate:.3g} candidate boxes exceeds budget {budget:.3g}"
        )
