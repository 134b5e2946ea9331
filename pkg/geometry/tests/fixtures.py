"""
Small hand-checkable point sets and Hypothesis strategies shared by the tests.
"""
from fractions import Fraction

from hypothesis import strategies as st

from geometry.exactgeom import PointSet

SIMPLEX = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
CENTROID = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4))
UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def simplex():
    return PointSet(SIMPLEX)


def simplex_plus_centroid():
    return PointSet(SIMPLEX + [CENTROID])


def simplex_document():
    return {
        'schema_version': 1,
        'dimension': 3,
        'n': 4,
        'points': [[[c, 1] for c in point] for point in SIMPLEX],
        'genspec': None,
    }


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)
planar_points = st.tuples(rationals, rationals)
spatial_points = st.tuples(rationals, rationals, rationals)


def circumcircle_side(a, b, c, d):
    """+1 inside, 0 on, -1 outside, from the exact circumcentre."""
    ax, ay = map(Fraction, a)
    bx, by = map(Fraction, b)
    cx, cy = map(Fraction, c)
    det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax ** 2 + ay ** 2) * (by - cy) + (bx ** 2 + by ** 2) * (cy - ay) + (cx ** 2 + cy ** 2) * (ay - by)) / det
    uy = ((ax ** 2 + ay ** 2) * (cx - bx) + (bx ** 2 + by ** 2) * (ax - cx) + (cx ** 2 + cy ** 2) * (bx - ax)) / det
    radius = (ax - ux) ** 2 + (ay - uy) ** 2
    distance = (d[0] - ux) ** 2 + (d[1] - uy) ** 2
    return (distance < radius) - (distance > radius)
