"""Exception types shared across the package."""


class NotInvertible(ArithmeticError):
    """Raised when a series has no inverse under the weighted product."""


class ConvergenceError(RuntimeError):
    """A condition constant needed by a computation did not converge."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SupportError(ValueError):
    """A series has nonzero coefficients below the required degree."""


class KernelInconsistency(AssertionError):
    """Two independent routes to the same answer disagree.

    This should never be raised; seeing it means a numerical kernel is wrong.
    """
