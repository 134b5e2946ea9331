"""
The paraboloid lifting (x, y) -> (x, y, x² + y²).

A point s is inside the circle through p, q, r exactly when its lift lies
below the plane through the lifts of p, q, r. This module restates that
correspondence as code; lines through two points (the vertical-plane limit
of circles) are the depth module's business.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

from .exactgeom import (
    PointSet,
    PositionKind,
    PositionStatus,
    SpatialPoint,
    check_general_position,
    incircle,
    lifted,
    orient2d,
    orient3d,
    plane_through,
    side_of_plane,
)
from .exceptions import DegenerateCircleError, DegeneratePositionError, LiftingInconsistencyError

logger = logging.getLogger(__name__)


def lift_point(p) -> SpatialPoint:
    """Map (p_x, p_y) to (p_x, p_y, p_x² + p_y²) exactly."""
    return SpatialPoint(*lifted(p))


@dataclass(frozen=True)
class LiftedSet:
    """A planar set and its lift; index i of one is index i of the other."""

    source: PointSet
    lifted: PointSet

    def __len__(self) -> int:
        return len(self.source)


def lift_set(point_set: PointSet, verify: bool = True) -> LiftedSet:
    """
    Lift every point of a planar set onto the paraboloid.

    With ``verify`` the position status of both sides is computed and the
    correspondence is asserted: a planar set in general position has a
    lift in general position, and a cocircular witness quadruple lifts to
    a coplanar one. The converse does not hold for collinear triples,
    whose lifts lie on a parabola.

    Raises:
        ValueError: if the set is not planar.
        LiftingInconsistencyError: if the asserted correspondence fails.
    """
    if point_set.dimension != 2:
        raise ValueError("only planar sets can be lifted")
    lifted_points = PointSet([lift_point(p) for p in point_set], dimension=3)
    result = LiftedSet(point_set, lifted_points)

    if verify:
        planar_status = check_general_position(point_set)
        spatial_status = check_general_position(lifted_points)
        if planar_status.is_general and not spatial_status.is_general:
            raise LiftingInconsistencyError(
                f"planar set is in general position but its lift has coplanar points {spatial_status.witness}"
            )
        if len(planar_status.witness) == 4:
            a, b, c, d = (lifted_points[i] for i in planar_status.witness)
            if orient3d(a, b, c, d) != 0:
                raise LiftingInconsistencyError(
                    f"cocircular points {planar_status.witness} do not lift to coplanar points"
                )
    elif point_set.position_status.is_general:
        lifted_points._record_status(PositionStatus(PositionKind.GENERAL))

    return result


class SideCounts(NamedTuple):
    inside: int
    outside: int


def circle_side_counts(p: int, q: int, r: int, point_set: PointSet) -> SideCounts:
    """
    Count the points strictly inside and strictly outside the circle through p, q, r.

    Computed in the plane with the incircle predicate; ``inside + outside``
    is always ``n - 3``.

    Raises:
        DegenerateCircleError: if p, q, r are collinear.
        DegeneratePositionError: if some fourth point is on the circle.
    """
    coords = point_set.scaled
    a, b, c = coords[p], coords[q], coords[r]
    inside = outside = 0
    for s, d in enumerate(coords):
        if s in (p, q, r):
            continue
        side = incircle(a, b, c, d)
        if side > 0:
            inside += 1
        elif side < 0:
            outside += 1
        else:
            raise DegeneratePositionError("four cocircular points", tuple(sorted((p, q, r, s))))
    return SideCounts(inside, outside)


def lifted_side_counts(p: int, q: int, r: int, lifted_set: LiftedSet) -> SideCounts:
    """
    The same counts read off the lifted set: points below / above the plane
    through the lifts of p, q, r.
    """
    turn = orient2d(lifted_set.source.scaled[p], lifted_set.source.scaled[q], lifted_set.source.scaled[r])
    if turn == 0:
        raise DegenerateCircleError(f"points {p}, {q}, {r} are collinear")
    coords = lifted_set.lifted.scaled
    plane = plane_through(coords[p], coords[q], coords[r])
    below = above = 0
    for s, d in enumerate(coords):
        if s in (p, q, r):
            continue
        side = side_of_plane(plane, d) * turn
        if side < 0:
            below += 1
        elif side > 0:
            above += 1
        else:
            raise DegeneratePositionError("four coplanar lifted points", tuple(sorted((p, q, r, s))))
    return SideCounts(below, above)
