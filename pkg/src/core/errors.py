"""
Exception hierarchy for the LBNN workbench
"""

from typing import List, Optional


class LBNNError(Exception):
    """Base class for every error raised by the workbench."""


class DimensionMismatchError(LBNNError, ValueError):
    """Raised when a state, genome or matrix does not fit the network it is used with."""


class ClampError(LBNNError, ValueError):
    """Raised for clamps on hidden nodes or clamp values that disagree with a state."""


class EnumerationLimitError(LBNNError):
    """Raised when a state space or genome space is too large to enumerate."""


class GenomeFormatError(LBNNError, ValueError):
    """Raised when genome text cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class NetworkFileError(LBNNError, ValueError):
    """Raised when a network file (JSON spec or genome text) is malformed."""

    def __init__(self, path: str, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = path
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class ConfigError(LBNNError, ValueError):
    """Raised when a run configuration fails validation."""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
