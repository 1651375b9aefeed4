class UltratreeError(Exception):
    """Base class for every error raised by the ultratree package."""


class SpaceInputError(UltratreeError, ValueError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(SpaceInputError):
    def __init__(self, message, row=None, col=None):
        position = f" (row {row}, col {col})" if row is not None else ""
        super().__init__(f"{message}{position}")
        self.row = row
        self.col = col


class PreconditionError(UltratreeError, ValueError):
    pass


class NotUltrametricError(PreconditionError):
    def __init__(self, message, witness=None):
        if witness:
            message = f"{message}: strong triangle inequality fails on {witness}"
        super().__init__(message)
        self.witness = witness


class TreeInvariantError(PreconditionError):
    def __init__(self, message, node=None):
        super().__init__(f"node {node}: {message}" if node is not None else message)
        self.node = node


class NotABallError(PreconditionError):
    pass


class OverlappingBallsError(PreconditionError):
    pass


class NotAnIsometryError(PreconditionError):
    pass


class ConsistencyError(UltratreeError):
    """Two independent computations of the same fact disagreed."""
