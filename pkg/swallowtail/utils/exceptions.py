"""Exceptions raised by swallowtail computations and the command line interface."""

__all__ = [
    "ConfigError",
    "ExpressionError",
    "NumericAbort",
    "DegenerateMatrixError",
    "DivisibilityError",
    "RootTrackingError",
]


class ConfigError(ValueError):
    """Invalid run configuration. The command line exits with code 2."""


class ExpressionError(ConfigError):
    """Invalid initial data expression.

    Parameters
    ----------
    message : str
        Description of the problem.
    source : str or None, default=None
        The expression text.
    position : int or None, default=None
        0-based offset of the offending character in ``source``.
    """

    def __init__(self, message, source=None, position=None):
        self.source = source
        self.position = position
        if source is not None and position is not None:
            caret = " " * position + "^"
            message = f"{message} at position {position}\n  {source}\n  {caret}"
        super().__init__(message)


class NumericAbort(ArithmeticError):
    """A numerical step could not be completed. The command line exits with code 3.

    Parameters
    ----------
    message : str
        Description of the failure.
    iteration : int or None, default=None
        The fixed point iteration in which the failure happened, if any.
    """

    def __init__(self, message, iteration=None):
        self.iteration = iteration
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message)


class DegenerateMatrixError(NumericAbort):
    """The eikonal matrix M, or q_t, is not invertible at the origin."""


class DivisibilityError(NumericAbort):
    """A ring element is not divisible by 3z^2 - p to tolerance."""


class RootTrackingError(NumericAbort):
    """Newton continuation of a cubic root failed along a path."""
