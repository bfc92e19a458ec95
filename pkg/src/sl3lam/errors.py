"""Exception types raised across the package."""


class Sl3LamError(Exception):
    """Base class for all package errors."""


class FrozenMutation(Sl3LamError):
    pass


class IndexOutOfRange(Sl3LamError):
    pass


class FlavorMismatch(Sl3LamError):
    pass


class InvalidPermutation(Sl3LamError):
    pass


class InvalidTriangulation(Sl3LamError):
    pass


class BoundaryEdge(Sl3LamError):
    pass


class SelfGluedQuadrilateral(Sl3LamError):
    pass


class SelfFoldedFlip(Sl3LamError):
    """The flip would produce a triangle with two sides on one edge."""


class RoleNotFound(Sl3LamError):
    pass


class ChartMismatch(Sl3LamError):
    pass


class MissingChart(Sl3LamError):
    pass


class InvalidTag(Sl3LamError):
    pass


class InvalidKind(Sl3LamError):
    pass
