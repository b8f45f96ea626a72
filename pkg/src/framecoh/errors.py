"""Exception hierarchy.

Every error raised on bad input derives from :class:`FrameCoherenceError`
(itself a ``ValueError``) so callers, the CLI in particular, can catch one
type.
"""

from __future__ import annotations


class FrameCoherenceError(ValueError):
    """Base class for all validation failures in this package."""


class ToleranceError(FrameCoherenceError):
    """A numerical invariant was violated.

    Carries the measured quantity and the tolerance it was checked against.
    """

    def __init__(self, what: str, measured: float, tolerance: float):
        self.what = what
        self.measured = float(measured)
        self.tolerance = float(tolerance)
        super().__init__(f"{what}: measured {self.measured:.3e}, tolerance {self.tolerance:.1e}")


class NotHermitian(ToleranceError):
    pass


class TraceNotOne(ToleranceError):
    pass


class NotPositive(ToleranceError):
    pass


class NotOrthonormal(ToleranceError):
    pass


class NotTight(ToleranceError):
    pass


class NotBasis(ToleranceError):
    pass


class NotUnitary(ToleranceError):
    pass


class BadWeights(FrameCoherenceError):
    pass


class DimMismatch(FrameCoherenceError):
    pass


class LengthMismatch(FrameCoherenceError):
    pass


class BadParameter(FrameCoherenceError):
    pass


class BadCount(BadParameter):
    pass


class BadDimension(BadParameter):
    pass


class BadKappa(BadParameter):
    pass


class IndexOutOfRange(BadParameter):
    pass


class NoConvergence(FrameCoherenceError):
    pass


class NotRankOne(FrameCoherenceError):
    def __init__(self, index: int, second_eigenvalue: float):
        self.index = index
        self.second_eigenvalue = float(second_eigenvalue)
        super().__init__(
            f"effect {index} is not rank one (second eigenvalue {self.second_eigenvalue:.3e})"
        )


class ZeroProbability(FrameCoherenceError):
    pass


class UnknownName(FrameCoherenceError):
    pass


class InvalidParameters(BadParameter):
    pass


class ParseError(FrameCoherenceError):
    """Malformed JSON document or spec string."""
