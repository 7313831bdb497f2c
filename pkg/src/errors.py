from typing import List, Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class QvordError(Exception):
    """Base error. Carries a CLI exit code and a trail of context (file, language...)."""
    exit_code = EXIT_DATA

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message
        self.context: List[str] = []

    def add_context(self, ctx: str) -> "QvordError":
        # Outermost context first when rendered
        self.context.insert(0, ctx)
        return self

    def __str__(self) -> str:
        if not self.context:
            return self.message
        return f"{': '.join(self.context)}: {self.message}"


class DataError(QvordError):
    exit_code = EXIT_DATA


class NumericError(QvordError):
    exit_code = EXIT_NUMERIC


class ParseError(DataError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateError(DataError):
    pass


class EmptyInput(DataError):
    pass


class NegativeCountError(DataError, ValueError):
    pass


class TooFewPoints(DataError):
    pass


class TooLarge(DataError):
    pass


class DegenerateCategories(NumericError):
    pass


class DegenerateDistribution(NumericError):
    pass


class TruncationError(NumericError):
    pass


class NonFiniteCoordinate(NumericError, ValueError):
    pass


class NoMatchWarning(UserWarning):
    pass
