"""Exception hierarchy shared by every module."""


class LandscapeError(Exception):
    """Base class for all errors raised by :mod:`lca`."""


class InvalidSpectrum(LandscapeError, ValueError):
    pass


class ClusterOverlap(InvalidSpectrum):
    """Cluster representatives failed to come out strictly decreasing."""

    def __init__(self, upper, lower):
        self.pair = (upper, lower)
        super().__init__(
            f"cluster representatives not strictly decreasing: {upper!r} <= {lower!r}"
        )


class PerturbationTooLarge(InvalidSpectrum):
    pass


class MarginMismatch(LandscapeError, ValueError):
    pass


class EnumerationBudgetExceeded(LandscapeError):
    """Raised instead of materialising more than ``max_tables`` tables.

    The exact table count is carried on ``count``.
    """

    def __init__(self, count, max_tables):
        self.count = count
        self.max_tables = max_tables
        super().__init__(
            f"{count} contingency tables exceed the enumeration budget of {max_tables}"
        )


class InternalInvariantViolation(LandscapeError, AssertionError):
    pass


class BruteForceCapExceeded(LandscapeError):
    pass


class NotHermitian(LandscapeError, ValueError):
    pass


class NotUnitary(LandscapeError, ValueError):
    pass


class StepUnderflow(LandscapeError):
    """Line search could not find an increasing step. ``trajectory`` holds the last state."""

    def __init__(self, trajectory):
        self.trajectory = trajectory
        super().__init__(
            f"step underflow after {trajectory.iterations} iterations "
            f"(grad norm {trajectory.final_grad_norm:.3e})"
        )


class NonConvergence(LandscapeError):
    def __init__(self, trajectory):
        self.trajectory = trajectory
        super().__init__(
            f"no convergence within {trajectory.iterations} iterations "
            f"(grad norm {trajectory.final_grad_norm:.3e})"
        )
