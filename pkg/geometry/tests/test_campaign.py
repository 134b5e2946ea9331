import json
import tempfile
from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase

from geometry.campaign import (
    CHECKS,
    DEFAULT_CHECKS,
    Campaign,
    Journal,
    check_of,
    derive_seed,
    run_campaign,
    run_trial,
)
from geometry.exceptions import CampaignMismatchError, JournalCorruptionError
from geometry.pointset_io import parse_point_set
from geometry.reports import BoundEntry, BoundReport, Relation, Severity


def small_campaign(**overrides):
    options = dict(
        kind='lifted',
        sizes=(7, 8),
        trials=4,
        seed=3,
        checks=('welzl', 'corollary', 'prop', 'hull', 'guarantee'),
        grid=1000,
    )
    options.update(overrides)
    return Campaign(**options)


def deterministic(summary):
    payload = summary.to_dict()
    payload.pop('timing')
    return payload


def violating_report(point_set, **kwargs):
    report = BoundReport('f' * 64, len(point_set), 3, True)
    report.add(BoundEntry.compare('conj2 s_j', 40, 30, Relation.LE, j=0, severity=Severity.CONJECTURE))
    report.add(BoundEntry.compare('welzl E_j', 4, 4, Relation.LE, j=0))
    return report


class CampaignSpecTests(SimpleTestCase):
    def test_trial_specs(self):
        campaign = small_campaign()
        self.assertEqual(campaign.kind, 'lifted-random')
        self.assertEqual(campaign.trial_spec(0).n, 7)
        self.assertEqual(campaign.trial_spec(3).n, 8)
        self.assertEqual(campaign.trial_spec(2).seed, derive_seed(3, 2))
        construction = small_campaign(kind='paper-construction', sizes=(2,))
        self.assertEqual(construction.trial_spec(1).m, 2)

    def test_seeds_differ_by_trial_and_base(self):
        self.assertNotEqual(derive_seed(0, 1), derive_seed(0, 2))
        self.assertNotEqual(derive_seed(0, 1), derive_seed(1, 1))
        self.assertEqual(derive_seed(5, 9), derive_seed(5, 9))

    def test_validation(self):
        with self.assertRaises(ValueError):
            small_campaign(kind='planar')
        with self.assertRaises(ValueError):
            small_campaign(checks=('welzl', 'magic'))
        with self.assertRaises(ValueError):
            small_campaign(sizes=())

    def test_dict_round_trip(self):
        campaign = small_campaign()
        self.assertEqual(Campaign.from_dict(json.loads(json.dumps(campaign.to_dict()))), campaign)
        with self.assertRaises(ValueError):
            Campaign.from_dict({**campaign.to_dict(), 'extra': 1})

    def test_checks_cover_entry_names(self):
        self.assertEqual(check_of('welzl tightness (convex: all equal)'), 'welzl')
        self.assertEqual(check_of('2S_j <= 3e_j'), 'prop')
        self.assertEqual(check_of('s_0 = hull edges'), 'hull')
        self.assertEqual(check_of('s_1 <= 3n-12'), 's1')
        self.assertEqual(check_of('#doubly generated >= 2 (conjecture at j=1)'), 's1')
        self.assertIsNone(check_of('unrelated'))
        self.assertNotIn('two-facet', DEFAULT_CHECKS)
        self.assertIn('two-facet', CHECKS)


class TrialTests(SimpleTestCase):
    def test_run_trial_filters_entries(self):
        record, instance = run_trial(small_campaign(checks=('welzl',)), 0)
        self.assertIsNone(instance)
        self.assertEqual(record['n'], 7)
        self.assertTrue(record['entries'])
        self.assertTrue(all(entry['name'].startswith('welzl') for entry in record['entries']))

    def test_generation_failure_becomes_error_record(self):
        campaign = small_campaign(sizes=(40,), grid=2, max_rejections=5)
        record, instance = run_trial(campaign, 0)
        self.assertIsNone(instance)
        self.assertEqual(record['error']['code'], 'generation-exhausted')


class RunCampaignTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def test_writes_journal_and_summary(self):
        result = run_campaign(small_campaign(), self.root / 'a')
        self.assertEqual((result.ran, result.skipped, result.exit_status), (4, 0, 0))
        summary = json.loads((self.root / 'a' / 'summary.json').read_text())
        self.assertEqual(summary['trials_completed'], 4)
        self.assertEqual(summary['sizes'], {'7': 2, '8': 2})
        self.assertEqual(summary['theorem_violations'], 0)
        welzl = [row for row in summary['margins'] if row['name'] == 'welzl E_j' and row['j'] == 0]
        self.assertEqual(welzl[0]['min_margin'], 0)
        self.assertEqual(welzl[0]['equalities'], 4)
        self.assertTrue((self.root / 'a' / 'margins.csv').exists())
        self.assertEqual(len((self.root / 'a' / 'journal.jsonl').read_text().splitlines()), 4)

    def test_resume_gives_identical_summary(self):
        campaign = small_campaign()
        full = run_campaign(campaign, self.root / 'full')

        run_campaign(campaign, self.root / 'resumed')
        journal = self.root / 'resumed' / 'journal.jsonl'
        lines = journal.read_text().splitlines(keepends=True)
        journal.write_text(''.join(lines[:2]) + lines[2][:25])
        resumed = run_campaign(campaign, self.root / 'resumed')

        self.assertEqual((resumed.skipped, resumed.ran), (2, 2))
        self.assertEqual(deterministic(resumed.summary), deterministic(full.summary))

    def test_rerun_of_finished_campaign_runs_nothing(self):
        campaign = small_campaign(trials=2)
        first = run_campaign(campaign, self.root / 'c')
        second = run_campaign(campaign, self.root / 'c')
        self.assertEqual((second.skipped, second.ran), (2, 0))
        self.assertEqual(deterministic(first.summary), deterministic(second.summary))

    def test_different_campaign_in_same_directory(self):
        run_campaign(small_campaign(trials=1), self.root / 'd')
        with self.assertRaises(CampaignMismatchError):
            run_campaign(small_campaign(trials=1, seed=99), self.root / 'd')

    def test_tampered_journal(self):
        run_campaign(small_campaign(trials=2), self.root / 'e')
        journal = self.root / 'e' / 'journal.jsonl'
        lines = journal.read_text().splitlines()
        record = json.loads(lines[0])
        record['n'] += 1
        journal.write_text('\n'.join([json.dumps(record)] + lines[1:]) + '\n')
        with self.assertRaises(JournalCorruptionError) as caught:
            Journal(journal).recover()
        self.assertEqual(caught.exception.line, 1)

    def test_conjecture_violation_is_saved(self):
        campaign = small_campaign(trials=3, checks=('welzl', 'conj2'), stop_on_conjecture_violation=True)
        seen = []
        with mock.patch('geometry.campaign.verify_set', side_effect=violating_report):
            result = run_campaign(campaign, self.root / 'v', on_record=seen.append)
        self.assertEqual(result.exit_status, 4)
        self.assertTrue(result.stopped_early)
        self.assertEqual(len(seen), 1)
        instance = json.loads((self.root / 'v' / 'violations' / 'trial-000000.json').read_text())
        point_set, genspec = parse_point_set(instance)
        self.assertEqual(len(point_set), 7)
        self.assertEqual(genspec['seed'], derive_seed(3, 0))
        report = json.loads((self.root / 'v' / 'violations' / 'trial-000000-report.json').read_text())
        self.assertEqual(report['conjecture_violations'], 1)

    def test_parallel_run_matches_serial_run(self):
        campaign = small_campaign(sizes=(8, 9), trials=6)
        serial = run_campaign(campaign, self.root / 'serial')
        parallel = run_campaign(campaign, self.root / 'parallel', workers=2)
        self.assertEqual((parallel.ran, parallel.skipped), (6, 0))
        self.assertEqual(deterministic(parallel.summary), deterministic(serial.summary))
        lines = (self.root / 'parallel' / 'journal.jsonl').read_text().splitlines()
        self.assertEqual(sorted(json.loads(line)['trial'] for line in lines), list(range(6)))

    def test_conjecture_checks_produce_margin_rows(self):
        campaign = small_campaign(sizes=(8, 9, 10), trials=6, checks=('conj2', 'conj3'))
        result = run_campaign(campaign, self.root / 'conj')
        summary = result.summary
        self.assertEqual(summary.theorem_violations, 0)
        self.assertIn(result.exit_status, (0, 4))
        rows = summary.to_frame()
        self.assertEqual(set(rows['check']), {'conj2', 'conj3'})
        self.assertEqual(set(rows['severity']), {'CONJECTURE'})
        (hull_row,) = [row for (name, j), row in summary.margins.items() if name == 'conj2 s_j' and j == 0]
        self.assertEqual((hull_row.trials, hull_row.equalities, hull_row.min_margin), (6, 6, 0))
        conj3 = [row for (name, _), row in summary.margins.items() if name.startswith('conj3')]
        self.assertEqual(conj3[0].trials, 6)

    def test_five_point_campaign_is_clean(self):
        campaign = small_campaign(sizes=(5,), trials=3, checks=DEFAULT_CHECKS)
        result = run_campaign(campaign, self.root / 'five')
        self.assertEqual(result.summary.theorem_violations, 0)
        self.assertEqual(result.summary.conjecture_violations, 0)
        self.assertEqual(result.exit_status, 0)
        self.assertFalse(result.violation_files)
