"""
Shared plumbing for the geometry management commands: exit codes, error
translation and argument helpers.
"""
from pathlib import Path
from typing import List, Optional, Tuple

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from geometry.exceptions import GeometryError
from geometry.reports import BoundReport
from geometry.services import GeometryService

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_THEOREM_VIOLATION = 3
EXIT_CONJECTURE_VIOLATION = 4


def parse_pairs(value: str) -> Optional[List[Tuple[int, int]]]:
    """'all' -> None, 'i,j' -> [(i, j)]; several pairs separated by ';'."""
    if value == 'all':
        return None
    pairs = []
    for chunk in value.split(';'):
        parts = chunk.split(',')
        if len(parts) != 2:
            raise CommandError(f'bad pair {chunk!r}; expected i,j', returncode=EXIT_USAGE)
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise CommandError(f'bad pair {chunk!r}; expected i,j', returncode=EXIT_USAGE)
    return pairs


def parse_sizes(value: str) -> Tuple[int, ...]:
    """'8-24' (inclusive range), '8,12,16' or a mix such as '4,8-10'."""
    sizes: List[int] = []
    try:
        for chunk in value.split(','):
            if '-' in chunk:
                low, high = chunk.split('-')
                sizes.extend(range(int(low), int(high) + 1))
            else:
                sizes.append(int(chunk))
    except ValueError:
        raise CommandError(f'bad size list {value!r}', returncode=EXIT_USAGE)
    if not sizes:
        raise CommandError('empty size list', returncode=EXIT_USAGE)
    return tuple(sizes)


class GeometryCommand(BaseCommand):
    """
    Base class translating library errors into the stable exit codes:
    0 ok, 1 usage, 2 input or degeneracy, 3 theorem violation, 4 conjecture violation.
    """

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        argparse_exit = parser.exit

        # argparse reports usage errors with status 2, which is our input-error code
        def exit(status=0, message=None):
            argparse_exit(EXIT_USAGE if status == 2 else status, message)

        parser.exit = exit
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            '--workers',
            type=int,
            default=None,
            help='Worker processes (default: GEOMETRY_WORKERS)'
        )

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except GeometryError as exc:
            raise CommandError(f'{exc.code}: {exc}', returncode=EXIT_INPUT) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

    def service(self, options) -> GeometryService:
        return GeometryService(workers=options.get('workers'))

    def output_dir(self, options) -> Path:
        return Path(options.get('output_dir') or settings.GEOMETRY_OUTPUT_DIR)

    def exit_for_report(self, report: BoundReport) -> None:
        if report.theorem_violations:
            names = ', '.join(sorted({entry.name for entry in report.theorem_violations}))
            raise CommandError(f'theorem violation: {names}', returncode=EXIT_THEOREM_VIOLATION)
        if report.conjecture_violations:
            names = ', '.join(sorted({entry.name for entry in report.conjecture_violations}))
            raise CommandError(f'conjecture violation: {names}', returncode=EXIT_CONJECTURE_VIOLATION)
