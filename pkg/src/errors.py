class TopologyError(ValueError):
    """Base class for every domain error raised by the library."""


class ParseError(TopologyError):
    pass


class InvalidDiagram(TopologyError):
    pass


class InvalidComponent(TopologyError):
    pass


class InvalidTransverseFront(TopologyError):
    pass


class UnresolvableLinking(TopologyError):
    pass


class NotACancellingPair(TopologyError):
    pass


class MalformedPair(TopologyError):
    pass


class DegenerateMatrix(TopologyError):
    """Raised when an invariant needs a nonsingular linking matrix."""


class DimensionMismatch(TopologyError):
    pass


class NotSymmetric(TopologyError):
    pass


class ZeroNotAllowed(TopologyError):
    pass
