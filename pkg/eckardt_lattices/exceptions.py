class LatticeError(ValueError):
    """Base class for every error raised by eckardt_lattices."""


class MalformedInput(LatticeError):
    pass


class AsymmetricGram(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class UnknownKind(LatticeError):
    pass


class InvalidRank(LatticeError):
    pass


class ZeroScale(LatticeError):
    pass


class DegenerateLattice(LatticeError):
    pass


class ZeroVector(LatticeError):
    pass


class IsotropicVector(LatticeError):
    pass


class NotIsotropicGraph(LatticeError):
    pass


class NonIntegralOverlattice(LatticeError):
    pass


class NotTwoElementary(LatticeError):
    pass


class NonIntegerValues(LatticeError):
    pass


class EnumerationBoundExceeded(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class CapExceeded(LatticeError):
    pass


class NonIntegralReflection(LatticeError):
    pass


class GlueSearchFailed(LatticeError):
    pass


class NotARoot(LatticeError):
    pass


class NotPositiveDefiniteSpan(LatticeError):
    pass


class NoFermatMember(LatticeError):
    pass


class OddDimension(LatticeError):
    pass


class InvalidParams(LatticeError):
    pass


class NotCharacteristic(LatticeError):
    pass


class InconsistentClassification(LatticeError):
    pass
