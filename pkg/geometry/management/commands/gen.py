"""
Management command to generate a point set and write it as a JSON document.
"""
from pathlib import Path

from geometry.exactgeom import check_general_position
from geometry.generators import KIND_ALIASES, KINDS
from geometry.pointset_io import write_point_set

from ._base import GeometryCommand


class Command(GeometryCommand):
    help = 'Generate a point set (random planar, convex 3D or the four-chain construction)'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--kind',
            required=True,
            choices=sorted(set(KINDS) | set(KIND_ALIASES)),
            help='Generator kind'
        )
        parser.add_argument('--n', type=int, help='Number of points')
        parser.add_argument('--m', type=int, help='Points per chain of the construction (n = 4m)')
        parser.add_argument('--seed', type=int, default=0, help='Random seed')
        parser.add_argument('--grid', type=int, help='Integer coordinate bound (default: GEOMETRY_GRID)')
        parser.add_argument('--denominator', type=int, help='Grid denominator (default: GEOMETRY_DENOMINATOR)')
        parser.add_argument('--jitter', type=int, help='Perturbation amplitude in grid units')
        parser.add_argument('-o', '--output', help='Output file (default: <output dir>/<kind>-<size>-s<seed>.json)')
        parser.add_argument('--output-dir', help='Output directory (default: GEOMETRY_OUTPUT_DIR)')

    def handle(self, *args, **options):
        service = self.service(options)
        spec = service.genspec(
            options['kind'],
            n=options['n'],
            m=options['m'],
            seed=options['seed'],
            grid=options['grid'],
            denominator=options['denominator'],
            jitter=options['jitter'],
        )
        point_set = service.generate(spec)

        if options['output']:
            path = Path(options['output'])
        else:
            size = f'm{spec.m}' if spec.kind == 'paper-construction' else f'n{spec.n}'
            path = self.output_dir(options) / f'{spec.kind}-{size}-s{spec.seed}.json'
        write_point_set(path, point_set, spec.to_dict())

        status = check_general_position(point_set)
        self.stdout.write(f'n={len(point_set)} dimension={point_set.dimension} position={status.describe()}')
        self.stdout.write(self.style.SUCCESS(f'Wrote {path}'))
