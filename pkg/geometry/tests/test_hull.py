from django.test import SimpleTestCase

from geometry.depth import all_segment_depths
from geometry.exactgeom import PointSet, orient3d
from geometry.exceptions import DegeneratePositionError, NotConvexPositionError
from geometry.generators import gen_convex_3d
from geometry.hull import (
    convex_hull_3d,
    delta_excess,
    depth_one_segments,
    require_convex_position,
    s1_bound_report,
)

from .fixtures import simplex, simplex_plus_centroid


class HullTests(SimpleTestCase):
    def test_simplex(self):
        hull = convex_hull_3d(simplex())
        self.assertEqual(hull.vertices, (0, 1, 2, 3))
        self.assertEqual(len(hull.facets), 4)
        self.assertEqual(len(hull.edges), 6)
        self.assertEqual(set(hull.degree.values()), {3})
        self.assertEqual(hull.neighbours(0), [1, 2, 3])

    def test_interior_point_is_not_a_vertex(self):
        hull = convex_hull_3d(simplex_plus_centroid())
        self.assertEqual(hull.vertices, (0, 1, 2, 3))
        self.assertFalse(hull.has_edge(0, 4))

    def test_facets_are_outward(self):
        points = gen_convex_3d(12, seed=1, grid=1000)
        hull = convex_hull_3d(points)
        for a, b, c in hull.facets:
            for d in range(len(points)):
                if d not in (a, b, c):
                    self.assertEqual(orient3d(points[a], points[b], points[c], points[d]), -1)

    def test_euler_counts_for_convex_sets(self):
        points = gen_convex_3d(10, seed=2, grid=1000)
        hull = convex_hull_3d(points)
        self.assertEqual(len(hull.facets), 16)
        self.assertEqual(len(hull.edges), 24)
        self.assertEqual(sum(hull.degree.values()), 48)
        self.assertEqual(delta_excess(hull), 3 * 10 - 12)

    def test_each_edge_has_two_facets(self):
        hull = convex_hull_3d(gen_convex_3d(9, seed=3, grid=1000))
        for (u, v), (left, right) in hull.edges.items():
            self.assertNotEqual(left, right)
            self.assertTrue({u, v} <= set(left) and {u, v} <= set(right))

    def test_exclude(self):
        points = simplex_plus_centroid()
        with self.assertRaises(ValueError):
            convex_hull_3d(points, exclude=(0, 1))
        self.assertEqual(convex_hull_3d(points, exclude=(0,)).vertices, (1, 2, 3, 4))

    def test_coplanar_start_rejected(self):
        points = PointSet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
        with self.assertRaises(DegeneratePositionError):
            convex_hull_3d(points)

    def test_text_listing(self):
        text = convex_hull_3d(simplex()).to_text()
        self.assertTrue(text.startswith('# hull: 4 vertices, 4 facets, 6 edges'))
        self.assertIn('degree 3 3', text)


class DepthOneTests(SimpleTestCase):
    def test_requires_convex_position(self):
        with self.assertRaises(NotConvexPositionError) as caught:
            require_convex_position(simplex_plus_centroid())
        self.assertEqual(caught.exception.witness, 4)
        with self.assertRaises(NotConvexPositionError):
            depth_one_segments(simplex_plus_centroid())

    def test_simplex_has_none(self):
        self.assertEqual(depth_one_segments(simplex()), [])

    def test_matches_depth_one_pairs(self):
        for seed in range(3):
            points = gen_convex_3d(10, seed=seed, grid=1000)
            segments = depth_one_segments(points)
            records, histogram = all_segment_depths(points)
            depth_one = {record.pair for record in records if record.depth == 1}
            self.assertEqual({segment.pair for segment in segments}, depth_one)
            for segment in segments:
                self.assertIn(len(segment.generators), (1, 2))
            doubly = sum(1 for segment in segments if len(segment.generators) == 2)
            self.assertEqual(histogram.s[1] + doubly, 3 * 10 - 12)

    def test_generators_lie_off_the_segment(self):
        points = gen_convex_3d(9, seed=5, grid=1000)
        for segment in depth_one_segments(points):
            self.assertFalse(set(segment.pair) & set(segment.generators))
            for deleted in segment.generators:
                self.assertTrue(convex_hull_3d(points, exclude=(deleted,)).has_edge(*segment.pair))

    def test_s1_report_has_no_theorem_violations(self):
        report = s1_bound_report(gen_convex_3d(11, seed=4, grid=1000))
        self.assertFalse(report.theorem_violations)
        self.assertEqual(report.metadata['delta_excess'], 21)
        names = {entry.name for entry in report.entries}
        self.assertIn('s_1 + #doubly generated = 3n-12', names)
        self.assertIn('s_1 + sum(generators-1) = 3n-12', names)

    def test_five_points_have_one_triply_generated_segment(self):
        for seed in range(3):
            points = gen_convex_3d(5, seed=seed, grid=1000)
            segments = depth_one_segments(points)
            self.assertEqual(len(segments), 1)
            (segment,) = segments
            self.assertEqual(len(segment.generators), 3)
            self.assertEqual(set(segment.pair) | set(segment.generators), set(range(5)))

    def test_s1_report_at_five_points(self):
        for seed in range(3):
            report = s1_bound_report(gen_convex_3d(5, seed=seed, grid=1000))
            self.assertFalse(report.theorem_violations)
            self.assertFalse(report.conjecture_violations)
            names = {entry.name for entry in report.entries}
            self.assertIn('s_1 + sum(generators-1) = 3n-12', names)
            self.assertNotIn('generators per segment <= 2', names)
            self.assertNotIn('s_1 + #doubly generated = 3n-12', names)
            self.assertEqual(report.metadata['s_1'], 1)
            self.assertEqual(report.metadata['most_generators'], 3)

    def test_depth_one_pairs_are_not_hull_edges(self):
        points = gen_convex_3d(8, seed=6, grid=1000)
        hull = convex_hull_3d(points)
        for segment in depth_one_segments(points):
            self.assertFalse(hull.has_edge(*segment.pair))
