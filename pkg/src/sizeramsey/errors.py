"""Exception hierarchy.

Every domain failure derives from :class:`SizeRamseyError`; the CLI maps these
to exit code 1 and prints the class name as a stable prefix.
"""


class SizeRamseyError(Exception):
    """Base class for all domain errors."""


class InvalidVertex(SizeRamseyError):
    pass


class InvalidEdge(SizeRamseyError):
    pass


class ForeignEdge(SizeRamseyError):
    pass


class ParseError(SizeRamseyError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidParameter(SizeRamseyError):
    pass


class RegimeTooSmall(InvalidParameter):
    """Parameter formulas give d < 2 or k < 2 for the requested log n."""

    def __init__(self, message: str, min_log_n: float):
        self.min_log_n = min_log_n
        super().__init__(f"{message}; minimal valid log_n = {min_log_n:.6f}")


class TooLarge(SizeRamseyError):
    pass


class InvalidColoring(SizeRamseyError):
    pass
