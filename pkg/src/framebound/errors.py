"""Exception hierarchy shared by all modules.

Every error maps to CLI exit status 2, so callers can catch
``FrameboundError`` to handle any domain or input problem.
"""


class FrameboundError(Exception):
    pass


class DomainError(FrameboundError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PreconditionError(DomainError):
    """A hypothesis required by a theorem (e.g. unit determinant) fails."""


class NumericalError(FrameboundError, ArithmeticError):
    """An iterative or rounding procedure failed its own accuracy check."""


class ResourceError(FrameboundError, RuntimeError):
    """A size cap was exceeded (typically: group closure did not terminate)."""


class ConsistencyError(FrameboundError, AssertionError):
    """Two independent derivations of the same quantity disagree."""


class InputError(DomainError):
    """Malformed input file; carries the file name and line number."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")
