"""Exception hierarchy shared across the package."""


class MplGraphError(Exception):
    """Base class for all numeric/runtime errors raised by this package."""


class PositiveDefinitenessViolated(MplGraphError):
    """A Gram submatrix required by the pseudo-likelihood is not positive definite."""


class SampleSizeTooSmall(MplGraphError):
    """The neighborhood is too large for the available number of observations."""


class DegenerateChain(MplGraphError):
    """All birth/death rates are zero; the chain cannot move."""

    def __init__(self, message, iteration=None, partial_result=None):
        super().__init__(message)
        self.iteration = iteration
        self.partial_result = partial_result


class EmptyChain(MplGraphError):
    """No post-burn-in weight was accumulated."""


class NonConvergence(MplGraphError):
    """The covariance-completion sweep did not reach the tolerance."""

    def __init__(self, message, residual=None, sweeps=None):
        super().__init__(message)
        self.residual = residual
        self.sweeps = sweeps


class ConstantColumn(MplGraphError):
    """A data column has fewer than two distinct values."""


class DegenerateLabels(MplGraphError):
    """A metric needs both classes (or at least one positive) to be defined."""
