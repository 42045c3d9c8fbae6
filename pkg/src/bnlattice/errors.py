"""Exception types raised by bnlattice."""


class BNLatticeError(ValueError):
    """Base class; every precondition failure in the library derives from it."""


class DisconnectedGraph(BNLatticeError):
    pass


class LoopEdge(BNLatticeError):
    pass


class BadVertexIndex(BNLatticeError):
    pass


class BadScale(BNLatticeError):
    pass


class DegreeMismatch(BNLatticeError):
    pass


class BadGauge(BNLatticeError):
    pass


class NonIntegerDegree(BNLatticeError):
    pass


class DegreeOutOfRange(BNLatticeError):
    pass


class GenusTooSmall(BNLatticeError):
    pass


class RhoNegative(BNLatticeError):
    pass


class DegreeTooHigh(BNLatticeError):
    pass


class LambdaOutOfRange(BNLatticeError):
    pass


class ConsistencyError(AssertionError):
    """Two computations that must agree did not."""
