"""Exception hierarchy shared by every module."""


class MirecError(Exception):
    """Base class; ``code`` is the stable machine-readable name."""

    code = "MirecError"


def _make(name, doc):
    return type(name, (MirecError,), {"code": name, "__doc__": doc})


DuplicateNode = _make("DuplicateNode", "Two interpolation nodes coincide.")
DivisionByZeroPoly = _make("DivisionByZeroPoly", "Division by the zero polynomial.")
UnsupportedPoint = _make("UnsupportedPoint", "Evaluation point outside the supported domain.")
PoleAtGridPoint = _make("PoleAtGridPoint", "A potential has a pole at a requested grid point.")
PoleInCoefficient = _make("PoleInCoefficient", "A recurrence coefficient has a vanishing denominator.")
InvariantViolation = _make("InvariantViolation", "A quantity required to be positive is not.")
DegenerateGrid = _make("DegenerateGrid", "Sinusoidal coordinate repeats on the interpolation grid.")
AssumptionViolated = _make("AssumptionViolated", "Parameters are not generic enough for the construction.")
SingularDeformation = _make("SingularDeformation", "The deforming polynomial vanishes on the grid.")
CannotAdvance = _make("CannotAdvance", "Leading recurrence coefficient vanishes.")
MapUndefined = _make("MapUndefined", "The primitive map has a vanishing pivot.")
TheoremViolation = _make("TheoremViolation", "An expansion that must terminate did not.")
InsufficientBasis = _make("InsufficientBasis", "Not enough basis polynomials are available.")
ConjectureCounterexample = _make("ConjectureCounterexample", "A conjectured polynomial failed a held-out check.")
DegenerateSpectrum = _make("DegenerateSpectrum", "Two ladder eigenvalue shifts coincide.")
IrrationalShift = _make("IrrationalShift", "The parameter map needs a square root that is not rational.")
UnsupportedIndexType = _make("UnsupportedIndexType", "Only one kind of virtual state index is supported.")


class SingularSystem(MirecError):
    """Linear system without a unique solution."""

    code = "SingularSystem"

    def __init__(self, rank, size):
        super().__init__(f"matrix of size {size} has rank {rank}")
        self.rank = rank
        self.size = size


class VerificationFailure(MirecError):
    """An exact identity failed; ``witness`` locates the first failing instance."""

    code = "VerificationFailure"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}
