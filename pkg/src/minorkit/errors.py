# src/minorkit/errors.py

"""Exception hierarchy shared by the library and the command line.

Each class carries the process exit code the cli reports for it.
"""


class MinorkitError(Exception):
    """Base class for every error raised by minorkit."""

    exit_code = 1

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": {k: str(v) for k, v in self.details.items()},
        }


class InvalidArgument(MinorkitError):
    """A precondition on the arguments of an operation does not hold."""

    exit_code = 2


class ParseError(InvalidArgument):
    """Malformed graph6, JSON or td-file input."""


class ConfigurationError(MinorkitError):
    exit_code = 2


class ResourceLimit(MinorkitError):
    """A search or size budget was exhausted before an answer was known."""

    exit_code = 3

    def __init__(self, message: str = "", budget: int = 0, **details):
        super().__init__(message, budget=budget, **details)
        self.budget = budget


class Unsupported(MinorkitError):
    """Input lies outside the class an operation is implemented for."""

    exit_code = 2


class NotFound(MinorkitError):
    exit_code = 1


class ConstructionBug(MinorkitError):
    """An internal consistency check of a construction failed."""

    exit_code = 1
