from typing import Any, Optional


class StanleyDepthError(ValueError):
    """Base class for every error raised by sdepth_core."""


class IdealSyntaxError(StanleyDepthError):
    """Ideal text could not be parsed."""


class IdealError(StanleyDepthError):
    """Ideal violates a structural precondition (range, minimality, unit ideal...)."""


class PosetError(StanleyDepthError):
    """Poset cannot be built (bounding vector too small, box too large)."""


class PartitionError(StanleyDepthError):
    """A partition was used as verified but is not."""

    def __init__(self, message: str, violation: Optional[Any] = None):
        super().__init__(message)
        self.violation = violation


class ConstructionError(StanleyDepthError):
    """A construction's precondition failed, or its output did not verify."""


class SearchBudgetExceeded(StanleyDepthError):
    """
    The exact solver ran out of nodes.

    lower: largest k with a verified witness (or None)
    upper: smallest k not yet refuted, i.e. sdepth <= upper
    witness: the partition proving `lower`, if any
    """

    def __init__(self, message: str, lower: Optional[int], upper: int, witness: Any = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness
