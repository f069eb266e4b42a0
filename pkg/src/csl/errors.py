"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class CSLError(Exception):
    exit_code = 1


class StructuralError(CSLError, ValueError):
    """Malformed input: ambient mismatch, empty color, bad lengths."""

    exit_code = 2


class ShapeError(StructuralError):
    """A covering method was applied to a tuple of the wrong shape."""


class UnsupportedStructureError(CSLError):
    """Generators outside the nonnegative orthant, or a structured tuple without a window."""

    exit_code = 3


class VerificationError(CSLError):
    exit_code = 4


class ThresholdError(CSLError, ValueError):
    """An inclusion is only guaranteed above a threshold that was not met."""

    exit_code = 5

    def __init__(self, message, required=None, color=None):
        super().__init__(message)
        self.required = required
        self.color = color


class NotReadyError(ThresholdError):
    """Layer structure has not stabilized at the requested h."""


class CapacityError(CSLError):
    exit_code = 6


class OverflowCoordinateError(CapacityError, ArithmeticError):
    pass
