"""
Exception hierarchy for the mutual-visibility toolkit
Every module raises one of these so the CLI can map them to exit codes
"""

from typing import Optional


class MvdError(Exception):
    """Base class for all toolkit errors"""


class DomainError(MvdError, ValueError):
    """An operation was called outside its precondition"""


class EdgeListParseError(DomainError):
    """A line of an edge list could not be parsed"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class CapExceededError(MvdError):
    """An exhaustive routine refused an instance larger than its cap"""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: instance size {size} exceeds cap {cap}")


class BudgetExceededError(CapExceededError):
    """The exact solver refused a strongly connected component over budget"""

    def __init__(self, size: int, cap: int):
        super().__init__("solver budget", size, cap)


class ConfigError(MvdError):
    """Settings file or environment override is malformed"""
