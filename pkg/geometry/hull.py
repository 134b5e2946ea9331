"""
Exact 3D convex hull with explicit facet adjacency, vertex degrees and the
depth-one segment analysis built on hulls of one-point deletions.
"""
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .exactgeom import PointSet, ensure_general_position, orient3d, plane_through, side_of_plane
from .exceptions import DegeneratePositionError, NotConvexPositionError
from .pointset_io import point_set_digest
from .reports import BoundEntry, BoundReport, Relation, Severity

logger = logging.getLogger(__name__)

Facet = Tuple[int, int, int]
Pair = Tuple[int, int]


def _canonical(facet: Facet) -> Facet:
    """Rotate an oriented triangle so its smallest index comes first."""
    a, b, c = facet
    if a < b and a < c:
        return facet
    if b < c:
        return b, c, a
    return c, a, b


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class HullGraph:
    """
    Boundary of the hull: outward facets (every other point on the negative
    side), undirected edges with their two adjacent facets, and the number
    of hull neighbours of each vertex.
    """

    vertices: Tuple[int, ...]
    facets: Tuple[Facet, ...]
    edges: Dict[Pair, Tuple[Facet, Facet]] = field(compare=False)
    degree: Dict[int, int] = field(compare=False)

    def edge_set(self) -> FrozenSet[Pair]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _pair(u, v) in self.edges

    def neighbours(self, vertex: int) -> List[int]:
        return sorted(v if u == vertex else u for u, v in self.edges if vertex in (u, v))

    def to_text(self) -> str:
        lines = [
            f"# hull: {len(self.vertices)} vertices, {len(self.facets)} facets, {len(self.edges)} edges",
            "vertices " + " ".join(map(str, self.vertices)),
        ]
        lines.extend(f"facet {a} {b} {c}" for a, b, c in self.facets)
        for (u, v), (left, right) in sorted(self.edges.items()):
            lines.append(f"edge {u} {v} {','.join(map(str, left))} {','.join(map(str, right))}")
        lines.extend(f"degree {vertex} {self.degree[vertex]}" for vertex in self.vertices)
        return "\n".join(lines) + "\n"


def convex_hull_3d(point_set: PointSet, exclude: Iterable[int] = ()) -> HullGraph:
    """
    Incremental hull using orient3d only.

    Points in ``exclude`` are ignored, which gives conv(P minus some points)
    without re-indexing.

    Raises:
        ValueError: with fewer than four points left.
        DegeneratePositionError: on four coplanar points met during insertion.
    """
    excluded = set(exclude)
    indices = [i for i in range(len(point_set)) if i not in excluded]
    if len(indices) < 4:
        raise ValueError("a 3D hull needs at least four points")
    coords = point_set.scaled

    a, b, c, d = indices[:4]
    if orient3d(coords[a], coords[b], coords[c], coords[d]) == 0:
        raise DegeneratePositionError("four coplanar points", tuple(sorted((a, b, c, d))))

    facets: Dict[Facet, tuple] = {}
    owner: Dict[Pair, Facet] = {}

    def add_facet(facet: Facet) -> None:
        facets[facet] = plane_through(coords[facet[0]], coords[facet[1]], coords[facet[2]])
        x, y, z = facet
        owner[(x, y)] = owner[(y, z)] = owner[(z, x)] = facet

    def drop_facet(facet: Facet) -> None:
        del facets[facet]
        x, y, z = facet
        for edge in ((x, y), (y, z), (z, x)):
            if owner.get(edge) == facet:
                del owner[edge]

    for x, y, z, w in ((a, b, c, d), (a, b, d, c), (a, c, d, b), (b, c, d, a)):
        if orient3d(coords[x], coords[y], coords[z], coords[w]) > 0:
            add_facet((x, z, y))
        else:
            add_facet((x, y, z))

    for p in indices[4:]:
        point = coords[p]
        visible = []
        for facet, plane in facets.items():
            side = side_of_plane(plane, point)
            if side > 0:
                visible.append(facet)
            elif side == 0:
                raise DegeneratePositionError("four coplanar points", tuple(sorted(facet + (p,))))
        if not visible:
            continue

        visible_set = set(visible)
        horizon = []
        for x, y, z in visible:
            for u, v in ((x, y), (y, z), (z, x)):
                if owner[(v, u)] not in visible_set:
                    horizon.append((u, v))
        for facet in visible:
            drop_facet(facet)
        for u, v in horizon:
            add_facet((u, v, p))

    return _build_graph(facets)


def _build_graph(facets: Iterable[Facet]) -> HullGraph:
    ordered = tuple(sorted(_canonical(f) for f in facets))
    directed: Dict[Pair, Facet] = {}
    for facet in ordered:
        x, y, z = facet
        directed[(x, y)] = directed[(y, z)] = directed[(z, x)] = facet

    edges: Dict[Pair, Tuple[Facet, Facet]] = {}
    degree: Dict[int, int] = defaultdict(int)
    for (u, v), facet in directed.items():
        if u < v:
            edges[(u, v)] = (facet, directed[(v, u)])
            degree[u] += 1
            degree[v] += 1

    vertices = tuple(sorted(degree))
    return HullGraph(vertices, ordered, dict(sorted(edges.items())), dict(sorted(degree.items())))


@dataclass(frozen=True)
class DepthOneSegment:
    pair: Pair
    generators: Tuple[int, ...]


def _new_edges_without(point_set: PointSet, deleted: int, base_edges: FrozenSet[Pair]) -> List[Pair]:
    reduced = convex_hull_3d(point_set, exclude=(deleted,))
    return sorted(reduced.edge_set() - base_edges)


def require_convex_position(point_set: PointSet, hull: Optional[HullGraph] = None) -> HullGraph:
    """
    Raises:
        NotConvexPositionError: naming the smallest index that is not a hull vertex.
    """
    ensure_general_position(point_set)
    hull = hull or convex_hull_3d(point_set)
    if len(hull.vertices) < len(point_set):
        vertices = set(hull.vertices)
        raise NotConvexPositionError(next(i for i in range(len(point_set)) if i not in vertices))
    return hull


def depth_one_segments(point_set: PointSet, workers: int = 1) -> List[DepthOneSegment]:
    """
    Non-hull segments that become hull edges after deleting a single point,
    each with every point whose deletion does so (its generators).

    Requires convex position.
    """
    hull = require_convex_position(point_set)
    n = len(point_set)
    if n < 5:
        # three remaining points span only edges of the tetrahedron
        return []

    base_edges = hull.edge_set()
    generators: Dict[Pair, List[int]] = defaultdict(list)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_new_edges_without, [point_set] * n, range(n), [base_edges] * n)
            for deleted, new_edges in enumerate(results):
                for edge in new_edges:
                    generators[edge].append(deleted)
    else:
        for deleted in range(n):
            for edge in _new_edges_without(point_set, deleted, base_edges):
                generators[edge].append(deleted)

    segments = [DepthOneSegment(pair, tuple(gens)) for pair, gens in sorted(generators.items())]
    for segment in segments:
        if n >= 6 and len(segment.generators) > 2:
            logger.warning("segment %s has %d generators", segment.pair, len(segment.generators))
    return segments


def delta_excess(hull: HullGraph) -> int:
    """Sum over hull vertices of (degree - 3)."""
    return sum(d - 3 for d in hull.degree.values())


def s1_bound_report(point_set: PointSet, s1: Optional[int] = None, workers: int = 1) -> BoundReport:
    """
    The s_1 <= 3n - 12 statement and the counting identity behind it,
    s_1 + sum over segments of (#generators - 1) = sum(delta(p) - 3) = 3n - 12.

    From n = 6 on every segment has at most two generators, so the identity
    reads s_1 + #(segments generated by two points) = 3n - 12. At n = 5 the
    single non-hull segment is generated by each of the other three points.

    ``s1`` is taken from the depth module when not supplied.
    """
    hull = require_convex_position(point_set)
    n = len(point_set)
    segments = depth_one_segments(point_set, workers=workers)
    if s1 is None:
        from .depth import all_segment_depths

        _, histogram = all_segment_depths(point_set, workers=workers)
        s1 = histogram.s_at(1)

    excess = delta_excess(hull)
    doubly = [segment.pair for segment in segments if len(segment.generators) == 2]
    surplus = sum(len(segment.generators) - 1 for segment in segments)
    most_generators = max((len(segment.generators) for segment in segments), default=0)

    report = BoundReport(point_set_digest(point_set), n, 3, True)
    report.add(BoundEntry.compare("s_1 <= 3n-12", s1, 3 * n - 12, Relation.LE, j=1))
    report.add(BoundEntry.compare("sum(delta-3) = 3n-12", excess, 3 * n - 12, Relation.EQ))
    report.add(BoundEntry.compare("s_1 = #segments with a generator", s1, len(segments), Relation.EQ, j=1))
    report.add(BoundEntry.compare("s_1 + sum(generators-1) = 3n-12", s1 + surplus, 3 * n - 12, Relation.EQ, j=1))
    if n >= 6:
        report.add(BoundEntry.compare("generators per segment <= 2", most_generators, 2, Relation.LE))
        report.add(
            BoundEntry.compare("s_1 + #doubly generated = 3n-12", s1 + len(doubly), 3 * n - 12, Relation.EQ, j=1)
        )
        report.add(
            BoundEntry.compare(
                "#doubly generated >= 2 (conjecture at j=1)", len(doubly), 2, Relation.GE, j=1,
                severity=Severity.CONJECTURE,
            )
        )
    report.metadata.update(
        {
            "s_1": s1,
            "delta_excess": excess,
            "most_generators": most_generators,
            "doubly_generated": [list(pair) for pair in doubly],
        }
    )
    return report

