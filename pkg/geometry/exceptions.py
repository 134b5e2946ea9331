"""
Error types raised by the geometry modules.

Every error carries a stable ``code`` so the CLI and the HTTP API can map it
to an exit status or a response body without string matching.
"""
from typing import Optional, Tuple


class GeometryError(Exception):
    """Base class for all domain errors."""

    code = "geometry-error"


class DegeneratePositionError(GeometryError):
    """A predicate returned zero where general position was required."""

    code = "degenerate-position"

    def __init__(self, message: str, witness: Tuple[int, ...] = ()):
        self.witness = tuple(witness)
        if self.witness:
            message = f"{message} (witness indices {', '.join(map(str, self.witness))})"
        super().__init__(message)


class DegenerateCircleError(GeometryError):
    """The three points that should define a circle are collinear."""

    code = "degenerate-circle"


class CollinearWithAxisError(DegeneratePositionError):
    """A point lies on the line through the segment being swept."""

    code = "collinear-with-axis"


class BoundOutOfRangeError(GeometryError):
    """A closed-form bound was evaluated outside its hypothesis range."""

    code = "out-of-range"

    def __init__(self, name: str, j: int, n: int, condition: str):
        self.name = name
        self.j = j
        self.n = n
        super().__init__(f"{name}: j={j}, n={n} violates {condition}")


class NotConvexPositionError(GeometryError):
    """An operation requiring convex position received a set with an interior point."""

    code = "not-convex-position"

    def __init__(self, witness: int):
        self.witness = witness
        super().__init__(f"point {witness} is not a vertex of the convex hull")


class GenerationExhaustedError(GeometryError):
    code = "generation-exhausted"


class StructureLostError(GeometryError):
    """The rational realisation of the extremal construction lost its hull structure."""

    code = "structure-lost"


class LiftingInconsistencyError(GeometryError):
    code = "lifting-inconsistency"


class PointSetFormatError(GeometryError):
    """A point-set document could not be parsed."""

    code = "format"

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")


class WrongDimensionError(GeometryError):
    """A point set has the wrong dimension for the requested operation."""

    code = "wrong-dimension"

    def __init__(self, expected: int, actual: int, operation: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{operation} needs a {expected}D point set, got {actual}D")


class JournalCorruptionError(GeometryError):
    code = "journal-corrupt"

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {reason}")


class CampaignMismatchError(GeometryError):
    """An output directory already holds a journal for a different campaign."""

    code = "campaign-mismatch"
