"""Exception hierarchy shared by the services and mapped to exit codes by the CLI."""


class LinsupError(Exception):
    """Base class for every error raised by this package."""


class ProblemError(LinsupError, ValueError):
    """The problem instance is malformed."""


class ZeroRowError(ProblemError):
    def __init__(self, row: int):
        super().__init__(f"Row {row} of A has zero norm")
        self.row = row


class ZeroCostError(ProblemError):
    def __init__(self) -> None:
        super().__init__("Cost vector c has zero norm")


class DimensionMismatchError(ProblemError):
    pass


class NonFiniteEntryError(ProblemError):
    pass


class ProblemParseError(ProblemError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NumericalError(LinsupError):
    """A computation could not be carried out in floating point."""


class EscalationFailedError(NumericalError):
    pass


class NumericalBreakdownError(NumericalError):
    pass


class DivisionByZeroObjectiveError(NumericalError, ZeroDivisionError):
    pass


class NonPositiveDenominatorError(NumericalError, ValueError):
    pass


class RegenerationExhaustedError(NumericalError):
    pass


class OracleTooLargeError(LinsupError, ValueError):
    pass
