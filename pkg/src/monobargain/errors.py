"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class BargainError(Exception):
    exit_code = 5


class BoundExceededError(BargainError, ValueError):
    """An exhaustive construction would exceed its configured size bound."""

    exit_code = 2

    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the limit {limit}")


class ParseError(BargainError, ValueError):
    exit_code = 3


class InvalidDealSetError(BargainError, ValueError):
    """The deals are not a chain strictly increasing in both coordinates."""

    exit_code = 4


class EmptyCellError(BargainError, ValueError):
    """Two strategies produce no common outcome: property (i) fails."""

    exit_code = 4

    def __init__(self, row, col):
        self.row = row
        self.col = col
        super().__init__(f"empty cell at row {row!r}, column {col!r}")


class NonTightError(BargainError):
    """The equilibrium search ran out of outcomes, so the input is not tight."""

    exit_code = 4


class AmbiguousCellError(BargainError, ValueError):
    exit_code = 4


class RealizationError(BargainError):
    exit_code = 5


class ValidationError(BargainError, AssertionError):
    """An internally constructed certificate failed its own check. Always a bug."""

    exit_code = 5
