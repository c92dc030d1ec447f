"""Exception types shared across the library."""


class ShapeError(ValueError):
    """A structure-constant tensor, matrix or table has the wrong shape."""


class DimensionError(ValueError):
    """Operands live in mismatched ambient dimensions or contexts."""


class PreconditionError(ValueError):
    """A documented operation precondition does not hold for the input."""


class InvariantViolation(RuntimeError):
    """An internal consistency condition failed.

    Raised for states that are impossible on valid inputs; seeing this
    signals either corrupted input data or a bug in the library itself.
    """


class ParseError(ValueError):
    """An input document cannot be parsed into a library structure."""
