"""Exception hierarchy shared across the package."""


class MeroshareError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MeroshareError):
    """Syntax or validity error in an expression string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class InvalidExpressionError(MeroshareError):
    """Expression violates a structural invariant (e.g. non-entire
    argument to exp/sin/cos, division by the literal zero)."""


class DivisorValuationUnresolved(MeroshareError):
    """Leading coefficient of a series divisor could not be certified
    nonzero at the precision cap."""


class TruncationExhausted(MeroshareError):
    """All computed series coefficients tested zero/unknown up to the
    truncation depth cap."""


class IdenticallyVanishing(MeroshareError):
    """A function required to be nonzero vanishes identically (to the
    configured depth)."""


class BoundaryEvent(MeroshareError):
    """A zero or pole sits on (or too close to) an integration contour."""


class ResidualTooLarge(MeroshareError):
    """A winding-number integral did not converge to an integer within
    the required residual."""


class SubdivisionBudgetExceeded(MeroshareError):
    """Rectangle subdivision exceeded the cell budget."""


class RefinementFailed(MeroshareError):
    """Newton refinement of a candidate point did not converge."""
