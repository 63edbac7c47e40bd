"""Exception hierarchy for hypred."""


class HypredError(Exception):
    """Base class for all hypred errors."""


class DomainError(HypredError):
    """Function argument outside its mathematical domain (beyond the clamp window)."""


class DegeneratePoints(HypredError):
    """Coincident or near-coincident points where distinct ones are required."""


class DegenerateTriangle(HypredError):
    """Triangle too close to collinear or with near-coincident vertices."""


class DegenerateHull(HypredError):
    """All input points lie within tolerance of a common geodesic."""


class CollinearOverlap(HypredError):
    """Two segments share a sub-segment of positive length."""


class OutsideDisk(HypredError):
    """Poincare coordinates with |z| >= 1."""


class IllConditioned(HypredError):
    """Computation too close to a decision boundary to classify reliably."""


class NotSupporting(HypredError):
    """Line does not support the polygon (crosses it or misses it)."""


class NotOrdinaryReduced(HypredError):
    """Polygon violates the vertex/opposite-side structure required of it."""


class ConvergenceFailure(HypredError):
    """An iterative solver exhausted its budget before reaching tolerance."""


class ValidationFailure(HypredError):
    """A constructed object failed its own validation checks."""


class CoverageGap(HypredError):
    """A sampled interior point is not covered by any butterfly."""

    def __init__(self, message, witness=None, margin=None):
        super().__init__(message)
        self.witness = witness
        self.margin = margin


class ClosureViolation(HypredError):
    """The composed boundary cycle isometry is not the expected half-turn."""


class InvalidN(HypredError):
    """Vertex count must be an odd integer >= 3."""


class MalformedDocument(HypredError):
    """Polygon document fails schema or invariant checks on load."""
