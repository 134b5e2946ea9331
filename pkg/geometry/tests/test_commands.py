import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from geometry.exactgeom import PointSet
from geometry.management.commands._base import parse_pairs, parse_sizes
from geometry.pointset_io import load_point_set, write_point_set

from .fixtures import UNIT_SQUARE, simplex


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)
        overrides = override_settings(
            GEOMETRY_OUTPUT_DIR=str(self.root / 'runs'),
            GEOMETRY_WORKERS=1,
            GEOMETRY_GRID=1000,
        )
        overrides.enable()
        self.addCleanup(overrides.disable)

    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as caught:
            self.call(*args)
        self.assertEqual(caught.exception.returncode, code)
        return caught.exception


class ArgumentHelperTests(SimpleTestCase):
    def test_parse_pairs(self):
        self.assertIsNone(parse_pairs('all'))
        self.assertEqual(parse_pairs('0,1'), [(0, 1)])
        self.assertEqual(parse_pairs('0,1;2,3'), [(0, 1), (2, 3)])
        with self.assertRaises(CommandError):
            parse_pairs('0;1')

    def test_parse_sizes(self):
        self.assertEqual(parse_sizes('8-10'), (8, 9, 10))
        self.assertEqual(parse_sizes('4,8-9'), (4, 8, 9))
        with self.assertRaises(CommandError) as caught:
            parse_sizes('eight')
        self.assertEqual(caught.exception.returncode, 1)


class GenCommandTests(CommandTestCase):
    def test_writes_point_set(self):
        path = self.root / 'lifted.json'
        output = self.call('gen', '--kind', 'lifted', '--n', '8', '--seed', '2', '-o', str(path))
        self.assertIn('n=8 dimension=3 position=general', output)
        point_set, genspec = load_point_set(path)
        self.assertEqual(len(point_set), 8)
        self.assertEqual(genspec['kind'], 'lifted-random')
        self.assertEqual(genspec['grid'], 1000)

    def test_default_path(self):
        self.call('gen', '--kind', 'planar', '--n', '5')
        self.assertTrue((self.root / 'runs' / 'random-planar-n5-s0.json').exists())

    def test_construction(self):
        path = self.root / 'construction.json'
        output = self.call('gen', '--kind', 'paper-construction', '--m', '2', '-o', str(path))
        self.assertIn('n=8', output)

    def test_usage_errors(self):
        self.assertExitCode(1, 'gen', '--n', '5')
        self.assertExitCode(1, 'gen', '--kind', 'paper-construction')

    def test_exhausted_generation_is_input_error(self):
        error = self.assertExitCode(2, 'gen', '--kind', 'planar', '--n', '20', '--grid', '1')
        self.assertIn('generation-exhausted', str(error))


class VerifyCommandTests(CommandTestCase):
    def test_simplex(self):
        path = write_point_set(self.root / 'simplex.json', simplex())
        output = self.call('verify', str(path))
        self.assertIn('No violations', output)
        report = json.loads((self.root / 'runs' / 'simplex.report.json').read_text())
        self.assertEqual(report['theorem_violations'], 0)
        self.assertEqual(report['metadata']['s'], [6, 0])
        self.assertTrue((self.root / 'runs' / 'simplex.report.txt').exists())

    def test_degenerate_set_names_witness(self):
        path = write_point_set(self.root / 'square.json', PointSet(UNIT_SQUARE))
        error = self.assertExitCode(2, 'verify', str(path))
        self.assertIn('0, 1, 2, 3', str(error))

    def test_malformed_file(self):
        path = self.root / 'broken.json'
        path.write_text('{"dimension": 3,\n "points": [}\n')
        error = self.assertExitCode(2, 'verify', str(path))
        self.assertIn('broken.json', str(error))

    def test_missing_file(self):
        self.assertExitCode(2, 'verify', str(self.root / 'nowhere.json'))

    def test_construction_audit_in_report(self):
        path = self.root / 'construction.json'
        self.call('gen', '--kind', 'paper-construction', '--m', '2', '-o', str(path))
        try:
            output = self.call('verify', str(path), '--output-dir', str(self.root / 'reports'))
        except CommandError as exc:
            self.assertEqual(exc.returncode, 4)
            output = ''
        report = json.loads((self.root / 'reports' / 'construction.report.json').read_text())
        self.assertIn('construction_audit', report['metadata'])
        self.assertEqual(report['theorem_violations'], 0)
        if output:
            self.assertIn('construction audit', output)


class DepthCommandTests(CommandTestCase):
    def setUp(self):
        super().setUp()
        self.path = self.root / 'lifted.json'
        self.call('gen', '--kind', 'lifted', '--n', '10', '--seed', '1', '-o', str(self.path))

    def test_all_pairs_csv(self):
        output = self.call('depth', str(self.path))
        lines = output.strip().splitlines()
        self.assertEqual(lines[0], 'pair_i,pair_j,depth,witness')
        self.assertEqual(len(lines), 1 + 45)

    def test_both_algorithms_agree(self):
        output = self.call('depth', str(self.path), '--algorithm', 'both', '-o', str(self.root / 'depths.csv'))
        self.assertIn('0 mismatches over 45 pairs', output)
        self.assertTrue((self.root / 'depths.csv').exists())

    def test_single_pair_and_histogram(self):
        histogram = self.root / 'histogram.csv'
        output = self.call('depth', str(self.path), '--pairs', '0,1', '--histogram', str(histogram))
        self.assertEqual(len(output.strip().splitlines()), 2)
        self.assertEqual(histogram.read_text().splitlines()[0], 'j,s_j,S_j')

    def test_planar_file_uses_circle_depth(self):
        planar = self.root / 'planar.json'
        self.call('gen', '--kind', 'planar', '--n', '6', '-o', str(planar))
        output = self.call('depth', str(planar))
        self.assertEqual(len(output.strip().splitlines()), 1 + 15)

    def test_planar_file_with_selected_pair(self):
        planar = self.root / 'planar.json'
        self.call('gen', '--kind', 'planar', '--n', '6', '-o', str(planar))
        lines = self.call('depth', str(planar), '--pairs', '0,1').strip().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].startswith('0,1,'))

    def test_bad_pairs(self):
        self.assertExitCode(1, 'depth', str(self.path), '--pairs', '0-1')
        self.assertExitCode(1, 'depth', str(self.path), '--pairs', '3,3')
        self.assertExitCode(1, 'depth', str(self.path), '--pairs', '0,99')


class FacetsAndHullCommandTests(CommandTestCase):
    def test_facets(self):
        path = write_point_set(self.root / 'simplex.json', simplex())
        csv_path = self.root / 'facets.csv'
        self.call('facets', str(path), '-o', str(csv_path))
        lines = csv_path.read_text().splitlines()
        self.assertEqual(lines[0], 'j,e_j,E_j,bound_j,status')
        self.assertEqual(lines[1], '0,4,4,4,equal')

    def test_hull(self):
        path = write_point_set(self.root / 'simplex.json', simplex())
        output = self.call('hull', str(path))
        self.assertIn('# hull: 4 vertices, 4 facets, 6 edges', output)

    def test_planar_sets_are_input_errors(self):
        path = write_point_set(self.root / 'square.json', PointSet([(0, 0), (2, 0), (0, 1), (5, 7)]))
        self.assertExitCode(2, 'hull', str(path))
        self.assertExitCode(2, 'facets', str(path))


class CampaignCommandTests(CommandTestCase):
    def test_small_campaign(self):
        output_dir = self.root / 'campaign'
        args = (
            'campaign', '--kind', 'lifted', '--sizes', '7-8', '--trials', '2',
            '--checks', 'welzl,prop', '--output-dir', str(output_dir),
        )
        output = self.call(*args)
        self.assertIn('0 trials resumed from the journal, 2 run', output)
        self.assertIn('theorem violations: 0', output)
        self.assertTrue((output_dir / 'summary.json').exists())

        again = self.call(*args)
        self.assertIn('2 trials resumed from the journal, 0 run', again)

    def test_spec_file(self):
        spec = self.root / 'campaign.json'
        spec.write_text(json.dumps({'kind': 'lifted', 'sizes': [7], 'trials': 1, 'checks': ['hull'], 'grid': 1000}))
        output = self.call('campaign', '--spec', str(spec), '--output-dir', str(self.root / 'c'))
        self.assertIn('1 run', output)

    def test_missing_flags(self):
        self.assertExitCode(1, 'campaign', '--kind', 'lifted')

    def test_unknown_check(self):
        self.assertExitCode(1, 'campaign', '--kind', 'lifted', '--sizes', '7', '--trials', '1', '--checks', 'magic')

    def test_missing_spec_file(self):
        self.assertExitCode(2, 'campaign', '--spec', str(self.root / 'missing.json'))
