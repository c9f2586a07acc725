"""Exception types shared across the package."""


class CircdrawError(Exception):
    """Base class for all errors raised by circdraw."""


class InvalidParameter(CircdrawError, ValueError):
    pass


class TooLargeInstance(CircdrawError):
    """An exact solver or enumerator was asked to exceed its size cap."""


class DecompositionError(CircdrawError):
    """A tree-decomposition violates one of its axioms.

    ``kind`` is one of ``"not-a-tree"``, ``"dangling-vertex"``,
    ``"uncovered-vertex"``, ``"uncovered-edge"`` or ``"disconnected-vertex"``;
    ``item`` names the offending node, vertex or edge.
    """

    def __init__(self, kind, item, message=None):
        self.kind = kind
        self.item = item
        super().__init__(message or f"{kind}: {item!r}")


class InvalidCertificate(CircdrawError):
    """A certificate references ids that do not exist in its graphs."""


class DisconnectedGraph(CircdrawError):
    pass


class DegenerateGeometry(CircdrawError):
    """A drawing violates the genericity rules (overlaps, triple points, ...)."""


class PointOnChord(DegenerateGeometry):
    pass


class NoInteriorFace(CircdrawError):
    pass


class NotDominant(CircdrawError):
    pass


class RadiusTooSmall(CircdrawError):
    pass


class InternalContractViolation(CircdrawError):
    """A postcondition that the underlying theorem guarantees did not hold.

    Seeing this means there is a bug in the implementation.
    """
