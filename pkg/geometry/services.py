"""
Service layer for the geometry library.
Wraps the library for use in management commands and API views, filling in
defaults from Django settings.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from django.conf import settings

from .bounds import bound_table, verify_set
from .campaign import Campaign, CampaignResult, run_campaign
from .depth import DepthHistogram, DepthRecord, all_planar_pair_depths, all_segment_depths
from .exactgeom import PointSet
from .facets import FacetHistogram, build_facet_histogram
from .generators import GenSpec, generate
from .hull import HullGraph, convex_hull_3d
from .pointset_io import load_point_set, parse_point_set
from .reports import BoundReport

logger = logging.getLogger(__name__)


class GeometryService:
    """
    Service class that wraps the geometry modules for Django use.
    Every tunable left as None is read from the GEOMETRY_* settings.
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers if workers is not None else settings.GEOMETRY_WORKERS

    def genspec(self, kind: str, n: Optional[int] = None, m: Optional[int] = None, seed: int = 0,
                grid: Optional[int] = None, denominator: Optional[int] = None,
                jitter: Optional[int] = None) -> GenSpec:
        """
        Build a GenSpec, taking grid, denominator, jitter and the rejection
        limit from settings when not given.
        """
        return GenSpec(
            kind,
            n=n,
            m=m,
            seed=seed,
            grid=grid if grid is not None else settings.GEOMETRY_GRID,
            denominator=denominator if denominator is not None else settings.GEOMETRY_DENOMINATOR,
            jitter=jitter if jitter is not None else settings.GEOMETRY_JITTER,
            max_rejections=settings.GEOMETRY_MAX_REJECTIONS,
        )

    def generate(self, spec: GenSpec) -> PointSet:
        point_set = generate(spec)
        logger.info('generated %s set with %d points', spec.kind, len(point_set))
        return point_set

    def load(self, path) -> Tuple[PointSet, Optional[Dict[str, Any]]]:
        return load_point_set(path)

    def parse(self, document: Any, source: str = '<request>') -> Tuple[PointSet, Optional[Dict[str, Any]]]:
        return parse_point_set(document, source)

    def verify(self, point_set: PointSet, algorithm: str = 'sweep', two_facet: bool = False) -> BoundReport:
        return verify_set(point_set, workers=self.workers, algorithm=algorithm, two_facet=two_facet)

    def depths(self, point_set: PointSet, algorithm: str = 'sweep',
               pairs: Optional[Iterable[Tuple[int, int]]] = None) -> Tuple[List[DepthRecord], DepthHistogram]:
        """
        Segment depths of a 3D set, or circular pair depths of a planar set.
        """
        if point_set.dimension == 2:
            return all_planar_pair_depths(point_set, pairs=pairs)
        return all_segment_depths(point_set, algorithm=algorithm, workers=self.workers, pairs=pairs)

    def facets(self, point_set: PointSet) -> FacetHistogram:
        return build_facet_histogram(point_set, workers=self.workers)

    def hull(self, point_set: PointSet) -> HullGraph:
        return convex_hull_3d(point_set)

    def bounds(self, n: int, j: int) -> Dict[str, Any]:
        return bound_table(n, j)

    def campaign(self, campaign: Campaign, output_dir: Optional[Path] = None, on_record=None) -> CampaignResult:
        output_dir = Path(output_dir or settings.GEOMETRY_OUTPUT_DIR)
        return run_campaign(campaign, output_dir, workers=self.workers, on_record=on_record)
