"""Exception hierarchy shared by every module of the package."""


class GraphError(ValueError):
    """Base class for all errors raised by d2conn."""


class IndexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class EmptySet(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class Disconnected(GraphError):
    pass


class DiameterTooSmall(GraphError):
    pass


class WrongDiameter(GraphError):
    pass


class PartitionMismatch(GraphError):
    pass


class TooLarge(GraphError):
    pass


class ImproperColoring(GraphError):
    pass


class ParseError(GraphError):
    """Malformed input text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BadHeader(ParseError):
    pass


class ByteOutOfRange(ParseError):
    pass


class TruncatedBitstream(ParseError):
    pass


class TrailingGarbage(ParseError):
    pass


class TooManyTokens(ParseError):
    pass


class InternalConsistencyError(RuntimeError):
    """A structural guarantee the algorithms rely on was observed to fail."""
