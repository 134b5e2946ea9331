"""
DRF API views exposing verification, depth and the closed-form bounds.
"""
import logging

from django.conf import settings
from rest_framework import status
from rest_framework.decorators import api_view
from rest_framework.response import Response

from .depth import ALGORITHMS
from .exceptions import GeometryError
from .services import GeometryService

logger = logging.getLogger(__name__)


def _error(message: str, code: str, http_status=status.HTTP_400_BAD_REQUEST) -> Response:
    return Response({'error': message, 'code': code}, status=http_status)


def _load_body(request):
    """
    Parse the request body as a point-set document.

    Returns (point_set, None) or (None, error response).
    """
    document = request.data
    points = document.get('points') if isinstance(document, dict) else None
    limit = settings.GEOMETRY_API_MAX_POINTS
    if isinstance(points, list) and len(points) > limit:
        return None, _error(
            f'{len(points)} points exceed the limit of {limit}; use the command line for larger sets',
            'too-large',
            status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
        )
    try:
        point_set, _ = GeometryService(workers=1).parse(document)
    except GeometryError as exc:
        return None, _error(str(exc), exc.code)
    return point_set, None


@api_view(['POST'])
def verify(request):
    """
    API endpoint running every bound check on the posted point set.

    Body: point-set document {dimension, points: [[[num, den], ...], ...]}
    Returns: the BoundReport as JSON.
    """
    point_set, error = _load_body(request)
    if error is not None:
        return error
    try:
        report = GeometryService(workers=1).verify(point_set)
    except GeometryError as exc:
        return _error(str(exc), exc.code)
    return Response(report.to_dict(), status=status.HTTP_200_OK)


@api_view(['POST'])
def depth(request):
    """
    API endpoint for per-pair depths.

    Query params:
        algorithm: sweep (default) or brute
    """
    algorithm = request.query_params.get('algorithm', 'sweep')
    if algorithm not in ALGORITHMS:
        return _error(f'unknown algorithm {algorithm!r}', 'usage')
    point_set, error = _load_body(request)
    if error is not None:
        return error
    try:
        records, histogram = GeometryService(workers=1).depths(point_set, algorithm=algorithm)
    except GeometryError as exc:
        return _error(str(exc), exc.code)
    return Response(
        {
            'n': len(point_set),
            'dimension': point_set.dimension,
            'algorithm': algorithm,
            'records': [
                {'pair': list(record.pair), 'depth': record.depth, 'witness': record.witness}
                for record in records
            ],
            'histogram': {'s': list(histogram.s), 'S': list(histogram.S)},
        },
        status=status.HTTP_200_OK,
    )


@api_view(['GET'])
def bounds(request):
    """
    API endpoint evaluating every closed form at (n, j).

    Query params:
        n: number of points
        j: depth / facet level (default 0)
    Out-of-range values come back as null.
    """
    try:
        n = int(request.query_params['n'])
        j = int(request.query_params.get('j', 0))
    except (KeyError, ValueError):
        return _error('integer query parameters n (required) and j are expected', 'usage')
    if n < 1 or j < 0:
        return _error('n must be positive and j non-negative', 'usage')
    return Response(GeometryService(workers=1).bounds(n, j), status=status.HTTP_200_OK)
