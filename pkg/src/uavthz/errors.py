"""Exception hierarchy shared by all modules."""


class UavThzError(Exception):
    """Base class for every error raised by this package."""


class ZeroDistance(UavThzError, ValueError):
    """Station and UAV positions coincide; angles are undefined."""


class NonPositiveRange(UavThzError, ValueError):
    pass


class NonPositiveInput(UavThzError, ValueError):
    pass


class DegenerateSamples(UavThzError, ValueError):
    """Samples cannot support a fit (constant, negative, zero or too few)."""


class NoConvergence(UavThzError, ArithmeticError):
    pass


class BelowReferenceDistance(UavThzError, ValueError):
    def __init__(self, distance, reference, index=None):
        self.distance = distance
        self.reference = reference
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(
            f"link distance {distance:.9g} m is below the reference distance "
            f"{reference:.9g} m{where}"
        )


class AxisMismatch(UavThzError, ValueError):
    pass


class InsufficientSpread(UavThzError, ValueError):
    pass


class EmptySamples(UavThzError, ValueError):
    pass


class LengthMismatch(UavThzError, ValueError):
    pass


class ZeroVariance(UavThzError, ValueError):
    pass


class NoDrop(UavThzError, ArithmeticError):
    pass


class FlightLogError(UavThzError, ValueError):
    """Base for flight-log ingestion failures; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class ParseError(FlightLogError):
    pass


class NonMonotonicTime(FlightLogError):
    def __init__(self, line):
        super().__init__("time column is not strictly increasing", line)


class MissingColumn(FlightLogError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"missing column {column!r}")


class ConfigError(UavThzError, ValueError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        loc = ""
        if path is not None:
            loc = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(loc + message)


class TooFewSamples(UavThzError, ValueError):
    pass
