"""Exception hierarchy for gdet."""


class GdetError(Exception):
    """Base class for every error raised by this package."""


class NonSquare(GdetError, ValueError):
    pass


class ShapeMismatch(GdetError, ValueError):
    pass


class SizeMismatch(GdetError, ValueError):
    pass


class FieldMismatch(GdetError, ValueError):
    pass


class IndexOutOfRange(GdetError, IndexError):
    pass


class NonIncreasingIndices(GdetError, ValueError):
    pass


class SizeCapExceeded(GdetError):
    pass


class ExpansionCapExceeded(GdetError):
    pass


class CharacteristicTwo(GdetError, ValueError):
    pass


class BadField(GdetError, ValueError):
    pass


class Singular(GdetError, ValueError):
    pass


class ZeroDiagonal(GdetError, ValueError):
    pass


class BadPermutation(GdetError, ValueError):
    pass


class ZeroEntry(GdetError, ValueError):
    pass


class NotRankOne(GdetError, ValueError):
    pass


class ConstraintViolated(GdetError, ValueError):
    pass


class UnclassifiedSolution(GdetError):
    """A verified solution of the product equations that fits no known family."""


class StabViolation(GdetError):
    """Structural reason an operator fails canonical extraction.

    Subclasses carry a JSON-friendly ``record()`` used by the CLI.
    """

    kind = "violation"

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail

    def record(self):
        return {"violation": self.kind, "message": str(self), **self.detail}


class NotMonomial(StabViolation):
    kind = "NotMonomial"


class ParityViolation(StabViolation):
    kind = "ParityViolation"


class ProductNotOne(StabViolation):
    kind = "ProductNotOne"


class NotRankOneCoefficients(StabViolation):
    kind = "NotRankOne"


class DegenerateParams(StabViolation, ValueError):
    kind = "DegenerateParams"


class RoundTripMismatch(StabViolation):
    kind = "RoundTripMismatch"
