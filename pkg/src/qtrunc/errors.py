"""Exception hierarchy for the truncated-series engine and its clients."""


class QTruncError(Exception):
    """Base class for every error raised by :mod:`qtrunc`."""


class ExponentOutOfWindow(QTruncError, ValueError):
    """A term handed to a constructor lies outside its variable windows."""


class TableMismatch(QTruncError, ValueError):
    """Two series built over different variable tables were combined."""


class NotInvertible(QTruncError, ValueError):
    """The constant term of a series is not a unit of the integers."""


class NonTerminating(QTruncError, ValueError):
    """An expansion would not terminate under the truncation caps."""


class IllFormedMap(QTruncError, ValueError):
    pass


class UnknownVariable(QTruncError, KeyError):
    pass


class InvalidBinding(QTruncError, ValueError):
    """Parameter bindings are incomplete or violate a side condition."""


class InvalidParameters(QTruncError, ValueError):
    pass


class RangeTooSmall(QTruncError, ValueError):
    """A scan needs table entries beyond the range that was computed."""


class OffsetTooSmall(QTruncError):
    """Raised internally when a summand has a more negative q-order than the
    working offset allows; the driver retries with ``needed``."""

    def __init__(self, needed):
        super().__init__(f"q-offset of at least {needed} (scaled) required")
        self.needed = needed
