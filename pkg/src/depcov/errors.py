"""Exception hierarchy.

Every error carries a short ``code`` so the command line can print
``code: message`` lines that are easy to grep.
"""


class DepcovError(ValueError):
    code = "DepcovError"


class NonPositiveMass(DepcovError):
    code = "NonPositiveMass"


class MassNotUnit(DepcovError):
    code = "MassNotUnit"


class NonFiniteCoordinate(DepcovError):
    code = "NonFiniteCoordinate"


class LengthTooSmall(DepcovError):
    code = "LengthTooSmall"


class LengthMismatch(DepcovError):
    code = "LengthMismatch"


class DegenerateMarginal(DepcovError):
    code = "DegenerateMarginal"


class InvalidParameter(DepcovError):
    code = "InvalidParameter"


class UnknownGenerator(DepcovError):
    code = "UnknownGenerator"


class ParseError(DepcovError):
    """Malformed CSV input. ``row`` is 1-based and counts the header."""

    code = "ParseError"

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column
