"""
Error hierarchy

Every failure raised by the library derives from EddError. The CLI maps each
class to an exit code (see EXIT_CODES).
"""

from typing import Optional


class EddError(Exception):
    """Base class for all ED degree errors"""
    kind = "error"


class DomainError(EddError, ValueError):
    """Arithmetic or data domain violation (zero division, cap mismatch, non-integral result)"""
    kind = "domain"


class PreconditionError(EddError):
    """A mathematical precondition of a formula does not hold"""
    kind = "precondition"


class UnsupportedError(EddError):
    """The request is outside what the tool can decide"""
    kind = "unsupported"


class UsageError(EddError):
    """Invalid command line usage"""
    kind = "usage"


class ParseError(EddError, ValueError):
    """Polynomial text could not be parsed"""
    kind = "parse"

    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        self.offset = offset          # 1-based byte offset into the input
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


EXIT_CODES = {
    ParseError: 2,
    UsageError: 2,
    DomainError: 3,
    PreconditionError: 3,
    UnsupportedError: 4,
}


def exit_code_for(error: EddError) -> int:
    """Exit code for an error instance, most specific class first"""
    for cls in type(error).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 1
