"""
Exception roots shared across the package.

Each module defines its own specific errors on top of these; the CLI only
needs to know the roots to pick an exit code.
"""


class PolyhomError(Exception):
    """Base class for every error raised by this package."""


class InputError(PolyhomError):
    """The caller supplied something unusable (file, parameter, tuple)."""


class ParamError(InputError, ValueError):
    """A parameter violates a stated constraint.

    Args:
        message: Description naming the violated constraint.
        parameter: Optional parameter name.
    """

    def __init__(self, message: str, parameter: str = None):
        super().__init__(message)
        self.parameter = parameter
