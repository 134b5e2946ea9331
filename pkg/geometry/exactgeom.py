"""
Exact sign predicates and position checks over rational coordinates.

Coordinates are ``int`` or ``fractions.Fraction``; floats are rejected at the
door. Every other module derives its plane-side and circle-side decisions
from the signs computed here.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

from .exceptions import DegenerateCircleError, DegeneratePositionError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class PlanarPoint(NamedTuple):
    x: Rational
    y: Rational


class SpatialPoint(NamedTuple):
    x: Rational
    y: Rational
    z: Rational


Point = Union[PlanarPoint, SpatialPoint]

# (normal_x, normal_y, normal_z, offset) of an oriented plane
Plane = Tuple[Rational, Rational, Rational, Rational]


def as_rational(value: Union[Rational, str]) -> Rational:
    """
    Coerce a coordinate to an exact rational.

    Integers stay integers so determinants of integer sets never touch
    Fraction arithmetic. Strings such as ``"13/36"`` are parsed exactly.

    Raises:
        TypeError: for floats or any other inexact type.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        parsed = Fraction(value)
        return parsed.numerator if parsed.denominator == 1 else parsed
    raise TypeError(f"coordinate {value!r} is not an exact rational")


def make_point(coordinates: Sequence[Union[Rational, str]]) -> Point:
    values = [as_rational(c) for c in coordinates]
    if len(values) == 2:
        return PlanarPoint(*values)
    if len(values) == 3:
        return SpatialPoint(*values)
    raise ValueError(f"points must have 2 or 3 coordinates, got {len(values)}")


def sign(value: Rational) -> int:
    return (value > 0) - (value < 0)


def orient2d(a: Sequence[Rational], b: Sequence[Rational], c: Sequence[Rational]) -> int:
    """Sign of det(b-a, c-a); +1 means (a, b, c) turns counterclockwise."""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def plane_through(a: Sequence[Rational], b: Sequence[Rational], c: Sequence[Rational]) -> Plane:
    """
    Oriented plane through a, b, c as (normal, offset).

    ``side_of_plane(plane_through(a, b, c), d) == orient3d(a, b, c, d)`` for
    every d, which lets the enumeration loops build the normal once per
    triple instead of once per determinant.
    """
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    nx = uy * vz - uz * vy
    ny = uz * vx - ux * vz
    nz = ux * vy - uy * vx
    return nx, ny, nz, nx * a[0] + ny * a[1] + nz * a[2]


def side_of_plane(plane: Plane, d: Sequence[Rational]) -> int:
    nx, ny, nz, offset = plane
    return sign(nx * d[0] + ny * d[1] + nz * d[2] - offset)


def orient3d(a: Sequence[Rational], b: Sequence[Rational], c: Sequence[Rational], d: Sequence[Rational]) -> int:
    """
    Sign of det(b-a, c-a, d-a).

    +1 means d is on the positive side of the oriented plane (a, b, c); the
    standard basis (origin, e1, e2, e3) gives +1.
    """
    return side_of_plane(plane_through(a, b, c), d)


def lifted(p: Sequence[Rational]) -> Tuple[Rational, Rational, Rational]:
    x, y = p[0], p[1]
    return x, y, x * x + y * y


def incircle(a: Sequence[Rational], b: Sequence[Rational], c: Sequence[Rational], d: Sequence[Rational]) -> int:
    """
    +1 if d is strictly inside the circle through a, b, c, -1 if outside, 0 if cocircular.

    Evaluated as orient3d on the four lifted points, normalised by the
    orientation of (a, b, c) so the answer does not depend on input order.

    Raises:
        DegenerateCircleError: if a, b, c are collinear.
    """
    turn = orient2d(a, b, c)
    if turn == 0:
        raise DegenerateCircleError(f"points {tuple(a)}, {tuple(b)}, {tuple(c)} are collinear")
    # counterclockwise (a, b, c): the lifted plane's positive side is above it
    return -turn * orient3d(lifted(a), lifted(b), lifted(c), lifted(d))


class PositionKind(Enum):
    UNKNOWN = "unknown"
    GENERAL = "general"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PositionStatus:
    kind: PositionKind
    witness: Tuple[int, ...] = ()

    @property
    def is_general(self) -> bool:
        return self.kind is PositionKind.GENERAL

    def describe(self) -> str:
        if self.kind is PositionKind.DEGENERATE:
            return f"degenerate (witness {', '.join(map(str, self.witness))})"
        return self.kind.value


UNKNOWN_POSITION = PositionStatus(PositionKind.UNKNOWN)


class PointSet:
    """
    Indexed, immutable sequence of distinct 2D or 3D rational points.

    Indices 0..n-1 are the stable identifiers used by every record type.
    The general-position status is computed on first request and cached;
    concurrent first requests compute the same value, so the cache is
    write-once in effect.
    """

    def __init__(self, points: Iterable[Sequence[Union[Rational, str]]], dimension: Optional[int] = None):
        converted = [make_point(p) for p in points]
        if dimension is None:
            dimension = len(converted[0]) if converted else 2
        if dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {dimension}")
        for index, point in enumerate(converted):
            if len(point) != dimension:
                raise ValueError(f"point {index} has {len(point)} coordinates, expected {dimension}")

        seen = {}
        for index, point in enumerate(converted):
            if point in seen:
                raise ValueError(f"points {seen[point]} and {index} coincide")
            seen[point] = index

        self.dimension = dimension
        self.points: Tuple[Point, ...] = tuple(converted)
        self._position_status = UNKNOWN_POSITION

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, index: int) -> Point:
        return self.points[index]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dimension == other.dimension and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dimension, self.points))

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)}, dimension={self.dimension}, position={self._position_status.describe()})"

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def position_status(self) -> PositionStatus:
        return self._position_status

    def _record_status(self, status: PositionStatus) -> PositionStatus:
        if self._position_status.kind is PositionKind.UNKNOWN:
            self._position_status = status
        return self._position_status

    @cached_property
    def scale(self) -> int:
        """Least common multiple of all coordinate denominators."""
        result = 1
        for point in self.points:
            for value in point:
                if isinstance(value, Fraction):
                    result = math.lcm(result, value.denominator)
        return result

    @cached_property
    def scaled(self) -> Tuple[Tuple[int, ...], ...]:
        """
        Integer coordinates after multiplying everything by ``scale``.

        A uniform positive scaling preserves every orient2d, orient3d and
        incircle sign, so the enumeration loops run on these.
        """
        factor = self.scale
        return tuple(tuple(int(value * factor) for value in point) for point in self.points)


def check_general_position(point_set: PointSet) -> PositionStatus:
    """
    Report the first degenerate tuple of the set, or general position.

    Dimension 2 looks for a collinear triple, then a cocircular quadruple;
    dimension 3 looks for a coplanar quadruple. Tuples are scanned in
    lexicographic order, so the witness is the first one in that order.
    The result is cached on the set.
    """
    if point_set.position_status.kind is not PositionKind.UNKNOWN:
        return point_set.position_status

    coords = point_set.scaled
    n = len(coords)
    witness: Optional[Tuple[int, ...]] = None

    if point_set.dimension == 2:
        for i, j, k in combinations(range(n), 3):
            if orient2d(coords[i], coords[j], coords[k]) == 0:
                witness = (i, j, k)
                break
        if witness is None:
            lifts = [lifted(p) for p in coords]
            witness = _first_coplanar_quadruple(lifts)
    else:
        witness = _first_coplanar_quadruple(coords)

    if witness is None:
        status = PositionStatus(PositionKind.GENERAL)
    else:
        status = PositionStatus(PositionKind.DEGENERATE, witness)
        logger.debug("point set of %d points is degenerate at %s", n, witness)
    return point_set._record_status(status)


def _first_coplanar_quadruple(coords: Sequence[Sequence[int]]) -> Optional[Tuple[int, int, int, int]]:
    n = len(coords)
    for i, j, k in combinations(range(n), 3):
        plane = plane_through(coords[i], coords[j], coords[k])
        if plane[:3] == (0, 0, 0):
            # collinear triple: coplanar with any fourth point
            if n > 3:
                fourth = next(index for index in range(n) if index not in (i, j, k))
                return tuple(sorted((i, j, k, fourth)))
            return None
        for m in range(k + 1, n):
            if side_of_plane(plane, coords[m]) == 0:
                return i, j, k, m
    return None


def ensure_general_position(point_set: PointSet) -> PositionStatus:
    """
    Raises:
        DegeneratePositionError: naming the witness tuple if the set is degenerate.
    """
    status = check_general_position(point_set)
    if not status.is_general:
        raise DegeneratePositionError(
            f"{point_set.dimension}D point set is not in general position", status.witness
        )
    return status


@dataclass(frozen=True)
class ConvexPositionResult:
    is_convex: bool
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.is_convex


def check_convex_position(point_set: PointSet) -> ConvexPositionResult:
    """
    True iff every point of a 3D set is a vertex of its convex hull.

    The witness is the smallest index that is not a hull vertex.

    Raises:
        DegeneratePositionError: if the set is not in general position.
        ValueError: for planar sets.
    """
    if point_set.dimension != 3:
        raise ValueError("convex position is checked for 3D sets only")
    ensure_general_position(point_set)
    if len(point_set) <= 4:
        return ConvexPositionResult(True)

    from .hull import convex_hull_3d

    vertices = set(convex_hull_3d(point_set).vertices)
    for index in range(len(point_set)):
        if index not in vertices:
            return ConvexPositionResult(False, index)
    return ConvexPositionResult(True)

