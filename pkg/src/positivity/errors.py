"""Exception types raised across the toolkit."""


class PositivityError(Exception):
    """Base class for all toolkit errors."""


class DegenerateInput(PositivityError, ValueError):
    """Input is degenerate for the requested operation (zero polynomial, h <= 0, ...)."""


class ImproperInput(PositivityError, ValueError):
    """A proper transfer function was required but an improper one was given."""


class PoleOnAxis(PositivityError, ValueError):
    """Frequency response requested at a pole on the imaginary axis."""


class GridMismatch(PositivityError, ValueError):
    """Two signals do not share the same time grid."""


class NoWitnessExists(PositivityError):
    """A negativity witness was requested for a system that is not shown non-positive."""


class ParseError(PositivityError, ValueError):
    """Malformed transfer-function text or input specification."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
