"""Exception types shared across the package."""


class RacForgeError(Exception):
    """Base class for all rac-forge errors."""


class InvalidWeight(RacForgeError):
    """Scalar weight outside [0, 1], or weight vector not normalized."""


class WrongWeightArity(RacForgeError):
    """Weight vector has the wrong length for the requested bias family."""


class UnnormalizedCustom(RacForgeError):
    """Custom bias entries do not sum to one within tolerance."""


class ShapeMismatch(RacForgeError):
    """Strategy or realization shape does not match the scenario."""


class SearchTooLarge(RacForgeError):
    """Requested enumeration exceeds the configured object limit."""

    def __init__(self, message, scan_count=None):
        super().__init__(message)
        self.scan_count = scan_count


class WrongOutcomeCount(RacForgeError):
    """Two-outcome solver called with a different number of states."""


class NoConvergence(RacForgeError):
    """Iterative solver hit its iteration cap without a valid certificate."""


class NotProjective(RacForgeError):
    """Operation requires projective measurements."""


class OutOfTheoryScope(RacForgeError):
    """No closed-form result is available for the requested scenario."""
