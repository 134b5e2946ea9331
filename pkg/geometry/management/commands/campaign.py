"""
Management command to run (or resume) a conjecture search campaign.
"""
import json

from django.conf import settings
from django.core.management.base import CommandError

from geometry.campaign import CHECKS, DEFAULT_CHECKS, Campaign
from geometry.generators import KIND_ALIASES, KINDS

from ._base import (
    EXIT_CONJECTURE_VIOLATION,
    EXIT_INPUT,
    EXIT_THEOREM_VIOLATION,
    EXIT_USAGE,
    GeometryCommand,
    parse_sizes,
)


class Command(GeometryCommand):
    help = 'Run a resumable campaign of generated sets through every check'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--spec', help='Campaign JSON file (overrides the flags below)')
        parser.add_argument('--kind', choices=sorted((set(KINDS) | set(KIND_ALIASES)) - {'random-planar', 'planar'}))
        parser.add_argument('--sizes', help="n values (m for the construction), e.g. '8-24' or '8,12,16'")
        parser.add_argument('--trials', type=int, help='Number of trials')
        parser.add_argument('--seed', type=int, default=0, help='Base seed; trial seeds derive from it')
        parser.add_argument(
            '--checks',
            default=','.join(DEFAULT_CHECKS),
            help=f'Comma-separated subset of: {", ".join(CHECKS)}'
        )
        parser.add_argument('--algorithm', choices=['sweep', 'brute'], default='sweep')
        parser.add_argument('--stop-on-conjecture-violation', action='store_true')
        parser.add_argument('--output-dir', help='Campaign directory (default: GEOMETRY_OUTPUT_DIR)')

    def build_campaign(self, options) -> Campaign:
        if options['spec']:
            try:
                with open(options['spec'], encoding='utf-8') as handle:
                    return Campaign.from_dict(json.load(handle))
            except OSError as exc:
                raise CommandError(f'{options["spec"]}: {exc.strerror}', returncode=EXIT_INPUT)
            except json.JSONDecodeError as exc:
                raise CommandError(f'{options["spec"]}:{exc.lineno}: {exc.msg}', returncode=EXIT_USAGE)
        missing = [flag for flag in ('kind', 'sizes', 'trials') if options[flag] is None]
        if missing:
            raise CommandError(
                f'--spec or all of --kind, --sizes, --trials are required (missing {", ".join(missing)})',
                returncode=EXIT_USAGE,
            )
        return Campaign(
            kind=options['kind'],
            sizes=parse_sizes(options['sizes']),
            trials=options['trials'],
            seed=options['seed'],
            checks=tuple(check.strip() for check in options['checks'].split(',') if check.strip()),
            stop_on_conjecture_violation=options['stop_on_conjecture_violation'],
            algorithm=options['algorithm'],
            grid=settings.GEOMETRY_GRID,
            denominator=settings.GEOMETRY_DENOMINATOR,
            jitter=settings.GEOMETRY_JITTER,
            max_rejections=settings.GEOMETRY_MAX_REJECTIONS,
        )

    def handle(self, *args, **options):
        campaign = self.build_campaign(options)
        service = self.service(options)
        output_dir = self.output_dir(options)
        self.stdout.write(f'Campaign {campaign.kind} sizes={list(campaign.sizes)} trials={campaign.trials} -> {output_dir}')

        result = service.campaign(campaign, output_dir)
        summary = result.summary
        self.stdout.write(f'{result.skipped} trials resumed from the journal, {result.ran} run')
        if result.stopped_early:
            self.stdout.write(self.style.WARNING('Stopped at the first conjecture violation'))
        self.stdout.write(summary.to_frame().to_string(index=False, na_rep=''))
        self.stdout.write(
            f'errors: {summary.errors}  theorem violations: {summary.theorem_violations}  '
            f'conjecture violations: {summary.conjecture_violations}'
        )
        for path in result.violation_files:
            self.stdout.write(self.style.WARNING(f'Violation instance: {path}'))

        if result.exit_status == EXIT_THEOREM_VIOLATION:
            raise CommandError('theorem violation in campaign', returncode=EXIT_THEOREM_VIOLATION)
        if result.exit_status == EXIT_CONJECTURE_VIOLATION:
            raise CommandError('conjecture violation in campaign', returncode=EXIT_CONJECTURE_VIOLATION)
        self.stdout.write(self.style.SUCCESS(f'Summary written to {output_dir / "summary.json"}'))
