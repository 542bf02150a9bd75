"""Exception hierarchy shared across the package."""


class PerfAsymError(Exception):
    """Base class for all errors raised by perfasym."""


class ParseError(PerfAsymError, ValueError):
    """Malformed input: a bad header, row, or field."""


class ValidationError(PerfAsymError, ValueError):
    """Input parsed but violates a domain invariant."""


class DegenerateBaselineError(ValidationError):
    """Human and random baselines coincide, so HNS is undefined."""


class UnknownMethodError(PerfAsymError, KeyError):
    """A requested method (or metric) is absent from the data."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown method"
