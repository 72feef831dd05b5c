"""Exception hierarchy shared by every qlab module."""


class QlabError(Exception):
    """Base class for all library errors."""


class InvalidBase(QlabError, ValueError):
    pass


class BaseMismatch(QlabError, ValueError):
    pass


class DivisionByZero(QlabError, ZeroDivisionError):
    pass


class NonInvertible(QlabError, ArithmeticError):
    pass


class OutOfRange(QlabError, ValueError):
    pass


class NotPrimePower(QlabError, ValueError):
    pass


class DimensionMismatch(QlabError, ValueError):
    pass


class InvalidPosition(QlabError, ValueError):
    pass


class UnsupportedScale(QlabError, ValueError):
    pass


class NotSymplectic(QlabError, ValueError):
    pass


class NonRationalEigenvalue(QlabError):
    pass


class SingularP(QlabError):
    pass


class InconsistentExpansion(QlabError):
    pass


class IoError(QlabError, OSError):
    pass


class LimitExceeded(QlabError):
    """An enumeration would produce more objects than the configured cap."""

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size} objects requested, limit is {limit}")


class AxiomViolation(QlabError):
    """A scheme axiom fails; ``witness`` locates one offending entry."""

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom '{axiom}' violated at {witness}")


class NotDistanceRegular(QlabError):
    """Two vertex pairs at the same distance see different counts."""

    def __init__(self, witness, counts):
        self.witness = witness
        self.counts = counts
        x, y, i, j, k = witness
        super().__init__(
            f"p_{i}{j}^{k} not constant: pair ({x}, {y}) sees {counts[1]}, expected {counts[0]}"
        )
