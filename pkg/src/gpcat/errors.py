"""Exception types shared across the package; the CLI maps each to an exit code."""


class ParseError(ValueError):
    """Malformed diagram, word, morphism, matrix or group text."""


class TypeMismatch(ValueError):
    """Source/target arities or groups do not match."""


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded."""
