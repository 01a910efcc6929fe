"""Exception types shared across the package."""


class NormalTreeError(ValueError):
    """Base class for every error raised by this package."""


class FormatError(NormalTreeError):
    """Malformed text input, or a graph that is not simple."""


class EmptyGraph(NormalTreeError):
    pass


class UnknownVertex(NormalTreeError):
    pass


class InvalidTree(NormalTreeError):
    """Parent map that is cyclic or does not reach the root."""


class NotInTree(NormalTreeError):
    pass


class NotInHost(NormalTreeError):
    pass


class NotTreeEdge(NormalTreeError):
    pass


class InvalidArborescence(NormalTreeError):
    pass


class NotStronglyConnected(NormalTreeError):
    pass


class SizeLimitExceeded(NormalTreeError):
    pass


class StabilizationFailure(NormalTreeError):
    """A periodic computation did not agree across two materialization depths."""


class InvalidModel(NormalTreeError):
    pass


class AnchorNotInTree(NormalTreeError):
    pass


class PreconditionUnsatisfiable(NormalTreeError):
    pass


class Unsupported(NormalTreeError):
    """Configuration outside what the neighbourhood predicates define."""
