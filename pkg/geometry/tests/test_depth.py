import random
from itertools import combinations

from django.test import SimpleTestCase

from geometry.depth import (
    DepthRecord,
    all_planar_pair_depths,
    all_segment_depths,
    depth_histogram,
    depth_records_frame,
    depth_zero_pairs,
    max_depth_pair,
    max_possible_depth,
    planar_pair_depth,
    probe_generic_planes,
    segment_depth,
    segment_depth_bruteforce,
    segment_depth_sweep,
)
from geometry.exactgeom import PointSet
from geometry.exceptions import CollinearWithAxisError, DegeneratePositionError
from geometry.facets import facet_j
from geometry.generators import gen_convex_3d, gen_convex_plus_interior, gen_paper_construction, gen_random_planar
from geometry.hull import convex_hull_3d
from geometry.lift import lift_set

from .fixtures import simplex, simplex_plus_centroid


def shear(point_set):
    """Image under a unimodular shear followed by a translation."""
    return PointSet(
        [(x + y + 3, y + z - 2, z + 5) for x, y, z in point_set],
        dimension=3,
    )


class SmallSetTests(SimpleTestCase):
    def test_simplex_pairs_have_depth_zero(self):
        records, histogram = all_segment_depths(simplex())
        self.assertEqual(len(records), 6)
        self.assertEqual(histogram.s, (6, 0))
        self.assertEqual(depth_zero_pairs(records), [pair for pair in combinations(range(4), 2)])

    def test_interior_point_pairs(self):
        records, histogram = all_segment_depths(simplex_plus_centroid())
        self.assertEqual(histogram.s, (6, 4))
        for record in records:
            self.assertEqual(record.depth, 1 if 4 in record.pair else 0)

    def test_witness_attains_depth(self):
        points = gen_convex_3d(9, seed=6, grid=1000)
        for p, q in combinations(range(9), 2):
            for record in (segment_depth_bruteforce(p, q, points), segment_depth_sweep(p, q, points)):
                positive = facet_j(p, q, record.witness, points)
                self.assertEqual(min(positive, 6 - positive), record.depth)

    def test_max_possible_depth(self):
        self.assertEqual(max_possible_depth(4), 1)
        self.assertEqual(max_possible_depth(9), 3)
        self.assertEqual(len(depth_histogram([], 9).s), 4)


class AlgorithmAgreementTests(SimpleTestCase):
    def test_sweep_matches_bruteforce_on_lifted_sets(self):
        for n, seed in ((12, 0), (20, 1), (30, 2)):
            points = gen_convex_3d(n, seed=seed, grid=10_000)
            sweep, sweep_histogram = all_segment_depths(points, algorithm='sweep')
            brute, brute_histogram = all_segment_depths(points, algorithm='brute')
            self.assertEqual([r.depth for r in sweep], [r.depth for r in brute])
            self.assertEqual(sweep_histogram, brute_histogram)

    def test_sweep_matches_bruteforce_on_sampled_pairs(self):
        points = gen_convex_plus_interior(40, seed=3, grid=10_000)
        rng = random.Random(11)
        for p, q in (tuple(rng.sample(range(40), 2)) for _ in range(40)):
            self.assertEqual(segment_depth_sweep(p, q, points).depth, segment_depth_bruteforce(p, q, points).depth)

    def test_sweep_matches_bruteforce_on_construction(self):
        points = gen_paper_construction(3, seed=7)
        for p, q in combinations(range(12), 2):
            self.assertEqual(segment_depth(p, q, points).depth, segment_depth(p, q, points, algorithm='brute').depth)

    def test_histogram_sums_to_pair_count(self):
        points = gen_convex_plus_interior(11, seed=2, grid=1000)
        records, histogram = all_segment_depths(points)
        self.assertEqual(sum(histogram.s), 55)
        self.assertEqual(histogram.S[-1], 55)
        self.assertEqual(len(records), 55)


class InvarianceTests(SimpleTestCase):
    def test_depth_is_affine_invariant(self):
        points = gen_convex_plus_interior(10, seed=8, grid=1000)
        before, _ = all_segment_depths(points)
        after, _ = all_segment_depths(shear(points))
        self.assertEqual([r.depth for r in before], [r.depth for r in after])

    def test_depth_ignores_endpoint_order(self):
        points = gen_convex_3d(9, seed=9, grid=1000)
        for p, q in combinations(range(9), 2):
            self.assertEqual(segment_depth_sweep(p, q, points).depth, segment_depth_sweep(q, p, points).depth)

    def test_generic_planes_never_go_below_depth(self):
        points = gen_convex_plus_interior(12, seed=4, grid=1000)
        rng = random.Random(5)
        for p, q in combinations(range(12), 2):
            probed = probe_generic_planes(p, q, points, rng, trials=16)
            if probed is not None:
                self.assertGreaterEqual(probed, segment_depth_sweep(p, q, points).depth)

    def test_hull_edges_have_depth_zero(self):
        points = gen_convex_3d(12, seed=10, grid=1000)
        hull = convex_hull_3d(points)
        records, _ = all_segment_depths(points)
        self.assertEqual(set(depth_zero_pairs(records)), set(hull.edge_set()))


class PlanarDepthTests(SimpleTestCase):
    def test_planar_depth_matches_lifted_segment_depth(self):
        for seed in range(3):
            planar = gen_random_planar(10, seed=seed, grid=1000)
            lifted = lift_set(planar).lifted
            for p, q in combinations(range(10), 2):
                self.assertEqual(
                    planar_pair_depth(p, q, planar).depth,
                    segment_depth_sweep(p, q, lifted).depth,
                )

    def test_all_planar_pair_depths(self):
        planar = gen_random_planar(8, seed=3, grid=1000)
        records, histogram = all_planar_pair_depths(planar)
        self.assertEqual(len(records), 28)
        self.assertEqual(sum(histogram.s), 28)

    def test_all_planar_pair_depths_on_selected_pairs(self):
        planar = gen_random_planar(8, seed=3, grid=1000)
        records, histogram = all_planar_pair_depths(planar, pairs=[(1, 0), (2, 5)])
        self.assertEqual([record.pair for record in records], [(0, 1), (2, 5)])
        self.assertEqual(sum(histogram.s), 2)
        self.assertEqual(records[1], planar_pair_depth(2, 5, planar))

    def test_planar_depth_rejects_spatial_sets(self):
        with self.assertRaises(ValueError):
            planar_pair_depth(0, 1, simplex())


class ErrorTests(SimpleTestCase):
    def test_equal_endpoints(self):
        with self.assertRaises(ValueError):
            segment_depth_sweep(1, 1, simplex())

    def test_point_on_axis(self):
        points = PointSet([(0, 0, 0), (2, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        with self.assertRaises(CollinearWithAxisError):
            segment_depth_sweep(0, 1, points)
        with self.assertRaises(CollinearWithAxisError):
            segment_depth_bruteforce(0, 1, points)

    def test_coplanar_points(self):
        points = PointSet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
        with self.assertRaises(DegeneratePositionError):
            segment_depth_sweep(0, 1, points)
        with self.assertRaises(DegeneratePositionError):
            all_segment_depths(points)

    def test_planar_set_rejected(self):
        with self.assertRaises(ValueError):
            all_segment_depths(PointSet([(0, 0), (1, 0), (0, 1)]))

    def test_unknown_algorithm(self):
        with self.assertRaises(ValueError):
            all_segment_depths(simplex(), algorithm='fast')

    def test_pair_index_out_of_range(self):
        for pairs in ([(0, 9)], [(-1, 2)]):
            with self.assertRaises(ValueError):
                all_segment_depths(simplex(), pairs=pairs)
        with self.assertRaises(ValueError):
            all_planar_pair_depths(gen_random_planar(6, seed=0, grid=1000), pairs=[(0, 6)])

    def test_repeated_index_in_pairs(self):
        with self.assertRaises(ValueError):
            all_segment_depths(simplex(), pairs=[(2, 2)])


class RecordTests(SimpleTestCase):
    def test_max_depth_pair_breaks_ties_by_pair(self):
        records = [DepthRecord((0, 3), 1, 2), DepthRecord((0, 2), 1, 3), DepthRecord((1, 2), 0, 0)]
        self.assertEqual(max_depth_pair(records).pair, (0, 2))
        self.assertEqual(max_depth_pair(simplex_plus_centroid()).pair, (0, 4))
        with self.assertRaises(ValueError):
            max_depth_pair([])

    def test_frame_columns(self):
        frame = depth_records_frame([DepthRecord((0, 1), 0, 2), DepthRecord((0, 2), 0, None)])
        self.assertEqual(list(frame.columns), ['pair_i', 'pair_j', 'depth', 'witness'])
        self.assertTrue(frame['witness'].isna().iloc[1])
