"""
Management command to compute segment depths (or circular pair depths of a
planar set) and write them as CSV.
"""
import time

from django.core.management.base import CommandError

from geometry.depth import depth_records_frame
from geometry.pointset_io import write_csv

from ._base import EXIT_THEOREM_VIOLATION, GeometryCommand, parse_pairs


class Command(GeometryCommand):
    help = 'Per-pair depth records; --algorithm both cross-checks the sweep against the brute force'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('path', type=str, help='Point-set JSON file')
        parser.add_argument('--pairs', default='all', help="'all' or i,j (several as i,j;k,l)")
        parser.add_argument('--algorithm', choices=['sweep', 'brute', 'both'], default='sweep')
        parser.add_argument('-o', '--output', help='CSV file for the records (default: print)')
        parser.add_argument('--histogram', help='CSV file for the depth histogram')

    def handle(self, *args, **options):
        service = self.service(options)
        point_set, _ = service.load(options['path'])
        pairs = parse_pairs(options['pairs'])
        algorithm = options['algorithm']

        if algorithm == 'both' and point_set.dimension == 3:
            timings = {}
            results = {}
            for name in ('sweep', 'brute'):
                started = time.perf_counter()
                results[name] = service.depths(point_set, algorithm=name, pairs=pairs)
                timings[name] = time.perf_counter() - started
            sweep_records, histogram = results['sweep']
            brute_records, _ = results['brute']
            mismatches = [
                (s.pair, s.depth, b.depth)
                for s, b in zip(sweep_records, brute_records)
                if s.depth != b.depth
            ]
            self.stdout.write(
                f'sweep {timings["sweep"]:.3f}s, brute {timings["brute"]:.3f}s, '
                f'{len(mismatches)} mismatches over {len(sweep_records)} pairs'
            )
            if mismatches:
                raise CommandError(f'depth mismatch on {mismatches[:5]}', returncode=EXIT_THEOREM_VIOLATION)
            records = sweep_records
        else:
            records, histogram = service.depths(
                point_set, algorithm='sweep' if algorithm == 'both' else algorithm, pairs=pairs
            )

        frame = depth_records_frame(records)
        if options['output']:
            path = write_csv(options['output'], frame)
            self.stdout.write(self.style.SUCCESS(f'Wrote {len(frame)} records to {path}'))
        else:
            self.stdout.write(frame.to_csv(index=False))
        if options['histogram']:
            write_csv(options['histogram'], histogram.to_frame())
