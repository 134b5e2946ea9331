"""
Management command to dump the hull graph of a 3D point set.
"""
from pathlib import Path

from geometry.exceptions import WrongDimensionError

from ._base import GeometryCommand


class Command(GeometryCommand):
    help = 'Dump hull vertices, facets, edges with their adjacent facets, and vertex degrees'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('path', type=str, help='Point-set JSON file (3D)')
        parser.add_argument('-o', '--output', help='Text file (default: print)')

    def handle(self, *args, **options):
        service = self.service(options)
        point_set, _ = service.load(options['path'])
        if point_set.dimension != 3:
            raise WrongDimensionError(3, point_set.dimension, 'hull dump')
        text = service.hull(point_set).to_text()
        if options['output']:
            path = Path(options['output'])
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding='utf-8')
            self.stdout.write(self.style.SUCCESS(f'Wrote {path}'))
        else:
            self.stdout.write(text, ending='')
