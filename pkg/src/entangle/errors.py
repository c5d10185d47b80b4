"""Exception hierarchy.

``NumericalError`` subclasses are the failures the CLI maps to exit status 2.
"""


class EntangleError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(EntangleError):
    """A computation hit a degenerate or unresolvable configuration."""


class DegeneratePair(NumericalError):
    """Two segments intersect, nearly intersect, or share an endpoint."""

    def __init__(self, message="degenerate segment pair", pairs=None):
        super().__init__(message)
        self.pairs = [] if pairs is None else list(pairs)


class DegenerateProjection(NumericalError):
    """A projection direction is not in general position for a segment pair."""


class DegenerateTurn(NumericalError):
    """Two consecutive edge directions are parallel or antiparallel."""


class QuadratureFailure(NumericalError):
    """Adaptive quadrature did not reach its tolerance at maximum depth."""


class ExcessiveDegeneracy(NumericalError):
    """More than the allowed fraction of Monte Carlo samples had to be redrawn."""


class ConcatMismatch(EntangleError):
    """Two open chains to be joined do not share a start point."""


class SpecInvalid(EntangleError):
    """An experiment description is malformed."""


class SingularDesign(NumericalError):
    """A least-squares design matrix has no spread in its regressor."""


class GridMismatch(EntangleError):
    """Two statistic tables were computed on different length grids."""
