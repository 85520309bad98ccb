"""Exception hierarchy."""


class GrpdError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(GrpdError):
    """Malformed or inconsistent graph document.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    problem has no single location (e.g. JSON input).
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class InvalidPathError(GrpdError):
    """Edges that do not compose into a path of the graph."""


class CanonicalFormError(GrpdError):
    """An eventually periodic point given in non-canonical form."""


class DomainError(GrpdError):
    """Operation applied outside its domain (e.g. shifting a vertex)."""


class NotACycleError(GrpdError):
    pass


class NotIsolatedError(GrpdError):
    pass


class NotDiscreteError(GrpdError):
    """A discrete-space-only operation was given a non-discrete graph."""


class CapExceededError(GrpdError):
    """An enumeration exceeded its configured cap."""


class MatchingError(GrpdError):
    """An orbit matching that is not admissible for the requested map."""


class ConfigError(GrpdError, ValueError):
    """A malformed setting in the environment."""
