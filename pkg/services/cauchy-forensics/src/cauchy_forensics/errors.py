"""
Exception hierarchy for cauchy-forensics

Everything derives from ValueError so callers catching ValueError
keep working. The CLI maps each class to an exit code.
"""

from contextlib import contextmanager
from typing import Iterator, Optional


EXIT_OK = 0
EXIT_DATA_ERROR = 2
EXIT_ESTIMATION_FAILURE = 3


class ForensicsError(ValueError):
    """Base class for all library errors"""

    exit_code = EXIT_DATA_ERROR


class DomainError(ForensicsError):
    """Argument outside the domain of a mathematical operation"""


class InsufficientDataError(ForensicsError):
    """Not enough records or sample points to proceed"""


class DegenerateReferenceError(ForensicsError):
    """Reference sigma is zero, indicator cannot be normalized"""


class ConfigError(ForensicsError):
    """Invalid or unknown configuration key"""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class InputFileError(ForensicsError):
    """Input or output file cannot be read or written"""


class SchemaError(ForensicsError):
    """CSV header is missing a required column"""

    def __init__(self, message: str, column: Optional[str] = None):
        super().__init__(message)
        self.column = column


class RowError(ForensicsError):
    """A CSV data row violates the input schema or a record invariant"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EstimationError(ForensicsError):
    """Arctangent regression could not produce a valid estimate"""

    exit_code = EXIT_ESTIMATION_FAILURE

    def __init__(self, message: str, level: Optional[int] = None):
        if level is not None:
            message = f"rejection level {level}: {message}"
        super().__init__(message)
        self.level = level


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Prefix any ForensicsError raised inside the block with a stage label"""
    try:
        yield
    except ForensicsError as e:
        if not getattr(e, "stage", None):
            e.stage = name
            e.args = (f"{name}: {e.args[0] if e.args else ''}",) + tuple(e.args[1:])
        raise
