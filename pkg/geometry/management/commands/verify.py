"""
Management command to verify every closed-form bound on a point set.
"""
from pathlib import Path

from geometry.bounds import construction_audit
from geometry.depth import DepthHistogram
from geometry.pointset_io import write_json

from ._base import GeometryCommand


class Command(GeometryCommand):
    help = 'Verify a point-set file against every bound; exit 3 on a theorem violation, 4 on a conjecture violation'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('path', type=str, help='Point-set JSON file')
        parser.add_argument('--algorithm', choices=['sweep', 'brute'], default='sweep', help='Depth algorithm')
        parser.add_argument('--two-facet', action='store_true', help='Also check the two j-facets per shallow segment claim')
        parser.add_argument('--output-dir', help='Where to write the reports (default: GEOMETRY_OUTPUT_DIR)')

    def handle(self, *args, **options):
        service = self.service(options)
        point_set, genspec = service.load(options['path'])
        report = service.verify(point_set, algorithm=options['algorithm'], two_facet=options['two_facet'])

        if genspec and genspec.get('kind') == 'paper-construction':
            histogram = DepthHistogram(report.n, tuple(report.metadata['s']))
            audit = construction_audit(histogram)
            report.metadata['construction_audit'] = audit.to_dict()
            self.stdout.write(f'construction audit: s_j matches {audit.matches or "neither formula"}')
            self.stdout.write(audit.to_frame().to_string(index=False))

        stem = Path(options['path']).stem
        folder = self.output_dir(options)
        json_path = write_json(folder / f'{stem}.report.json', report.to_dict())
        text = report.to_text()
        text_path = folder / f'{stem}.report.txt'
        text_path.write_text(text, encoding='utf-8')

        self.stdout.write(text)
        self.stdout.write(f'Reports: {json_path}, {text_path}')
        self.exit_for_report(report)
        self.stdout.write(self.style.SUCCESS('No violations'))
