"""Exception and warning classes raised by cpgraphene."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class QuadratureError(CasimirError):
    """An integral did not reach the requested tolerance after all retries."""


class TruncationError(CasimirError):
    """The Matsubara sum did not converge before ``max_l`` was reached."""


class NoStraddleError(CasimirError):
    """Both ends of a crossover bracket lie on the same side of the threshold.

    ``side`` is ``"below"`` when the queried quantity is under the threshold
    over the whole bracket and ``"above"`` when it never drops below it.
    """

    def __init__(self, message, side, values=None):
        super().__init__(message)
        self.side = side
        self.values = values


class PermittivityTableError(CasimirError, ValueError):
    """Malformed or unphysical permittivity table."""

    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.path = path


class AsymptoticRegimeWarning(UserWarning):
    """The large-separation approximation is used outside its safe range."""
