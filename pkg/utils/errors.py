from typing import Optional


class AdaSeqError(Exception):
    """Root of every error raised by the toolkit."""


class InputError(AdaSeqError, ValueError):
    """Malformed input: bad ids, duplicate edges, unparsable files."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConsistencyError(InputError):
    """A vertex was observed twice with different states."""


class CapacityError(AdaSeqError, RuntimeError):
    """An exhaustive computation was asked to run past its guard."""


class UsageError(AdaSeqError):
    """Bad command-line usage: unknown policy names, out-of-range flags."""


class VerificationError(AdaSeqError):
    """A bound check failed on at least one instance."""


EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPACITY = 2
EXIT_VERIFICATION = 3


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION
    if isinstance(error, (CapacityError, UsageError)):
        return EXIT_CAPACITY
    if isinstance(error, InputError):
        return EXIT_INPUT
    return EXIT_INPUT
