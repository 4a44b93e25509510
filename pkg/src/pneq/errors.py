"""Exception types shared across the package."""


class PneqError(Exception):
    """Base class for all errors raised by pneq."""


class MultiplicityOverflow(PneqError, OverflowError):
    pass


class UnknownTransition(PneqError, KeyError):
    pass


class UnknownPlace(PneqError, KeyError):
    pass


class NotEnabled(PneqError):
    pass


class BoundExceeded(PneqError):
    """A state-space or size bound was hit; the caller must not guess an answer."""


class BudgetExceeded(PneqError):
    pass


class TooLarge(PneqError):
    pass


class NetFormatError(PneqError, ValueError):
    """Syntax or semantic error in a net, marking or relation text."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
