"""Exception hierarchy shared by all modules."""


class ComplexError(Exception):
    """Base class for domain errors; the CLI maps these to exit status 1."""


class NonPureInput(ComplexError):
    pass


class DominatedFacet(ComplexError):
    pass


class NotAFace(ComplexError):
    pass


class UnknownFacet(ComplexError):
    pass


class BadParams(ComplexError):
    pass


class NotAnEdge(ComplexError):
    pass


class IdCollision(ComplexError):
    pass


class NotNeighbors(ComplexError):
    pass


class InvalidPath(ComplexError):
    pass


class NotStronglyConnected(ComplexError):
    pass


class NotLocallyStronglyConnected(ComplexError):
    pass


class NotCodim2(ComplexError):
    pass


class StarNotCycle(ComplexError):
    pass


class Infeasible(ComplexError):
    pass


class NotInduced(ComplexError):
    pass


class ImproperInputColoring(ComplexError):
    pass


class OracleInconsistent(ComplexError):
    pass


class NotAShelling(ComplexError):
    pass


class BranchingNotCodim2(ComplexError):
    pass


class CarrierProjectionFailed(ComplexError):
    pass
