"""Exception hierarchy shared by the package."""


class PolarIndexError(Exception):
    pass


class ValidationError(PolarIndexError, ValueError):
    """Input breaks one or more domain rules; ``violations`` lists them."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class DimensionError(PolarIndexError, ValueError):
    pass


class ParameterError(PolarIndexError, ValueError):
    pass


class BoundsError(PolarIndexError, ValueError):
    pass


class SizeError(PolarIndexError, ValueError):
    pass


class AggregationError(PolarIndexError, ValueError):
    pass


class UnknownMemberError(PolarIndexError, KeyError):
    pass


class ParseError(PolarIndexError, ValueError):
    """Malformed input file; ``row`` is the 1-based line number."""

    def __init__(self, message, row=None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)
