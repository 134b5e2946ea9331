"""
Management command to dump the j-facet histogram of a 3D point set.
"""
from geometry.exceptions import WrongDimensionError
from geometry.pointset_io import write_csv

from ._base import GeometryCommand


class Command(GeometryCommand):
    help = 'Dump e_j, E_j and the Welzl bound for every j'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('path', type=str, help='Point-set JSON file (3D)')
        parser.add_argument('-o', '--output', help='CSV file (default: print a table)')

    def handle(self, *args, **options):
        service = self.service(options)
        point_set, _ = service.load(options['path'])
        if point_set.dimension != 3:
            raise WrongDimensionError(3, point_set.dimension, 'j-facet histogram')
        frame = service.facets(point_set).to_frame()
        if options['output']:
            path = write_csv(options['output'], frame)
            self.stdout.write(self.style.SUCCESS(f'Wrote {path}'))
        else:
            self.stdout.write(frame.to_string(index=False, na_rep=''))
