"""
Oriented j-facets of a 3D point set and the (<= j)-facet counts.

An oriented triangle pqr is a j-facet when exactly j points lie on the
positive side of its affine hull. Both orientations of every triangle are
counted, so sum(e_j) = 2 * C(n, 3) and e_j = e_{n-3-j}.

k-sets are not enumerated here: they only enter through the j-facet counts.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import accumulate, combinations
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from .exactgeom import PointSet, check_convex_position, ensure_general_position, plane_through, side_of_plane
from .exceptions import BoundOutOfRangeError, DegeneratePositionError
from .pointset_io import point_set_digest
from .reports import BoundEntry, BoundReport, Relation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FacetRecord:
    triple: Tuple[int, int, int]
    j: int


@dataclass(frozen=True)
class FacetHistogram:
    """e[j] = number of oriented j-facets, for j = 0..n-3."""

    n: int
    e: Tuple[int, ...]

    @property
    def E(self) -> Tuple[int, ...]:
        return tuple(accumulate(self.e))

    def e_at(self, j: int) -> int:
        return self.e[j] if 0 <= j < len(self.e) else 0

    def E_at(self, j: int) -> int:
        return sum(self.e[: j + 1]) if j >= 0 else 0

    def __add__(self, other: "FacetHistogram") -> "FacetHistogram":
        if self.n != other.n:
            raise ValueError("cannot merge histograms of different set sizes")
        return FacetHistogram(self.n, tuple(a + b for a, b in zip(self.e, other.e)))

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for j, (e_j, E_j) in enumerate(zip(self.e, self.E)):
            bound = welzl_bound(j, self.n) if in_welzl_range(j, self.n) else None
            if bound is None:
                status = "out-of-range"
            elif E_j == bound:
                status = "equal"
            elif E_j < bound:
                status = "below"
            else:
                status = "VIOLATION"
            rows.append({"j": j, "e_j": e_j, "E_j": E_j, "bound_j": bound, "status": status})
        frame = pd.DataFrame(rows, columns=["j", "e_j", "E_j", "bound_j", "status"])
        frame["bound_j"] = frame["bound_j"].astype("Int64")
        return frame


def _positive_count(coords: Sequence[Sequence[int]], p: int, q: int, r: int) -> int:
    plane = plane_through(coords[p], coords[q], coords[r])
    count = 0
    for s, d in enumerate(coords):
        if s == p or s == q or s == r:
            continue
        side = side_of_plane(plane, d)
        if side > 0:
            count += 1
        elif side == 0:
            raise DegeneratePositionError("four coplanar points", tuple(sorted((p, q, r, s))))
    return count


def facet_j(p: int, q: int, r: int, point_set: PointSet) -> int:
    """Number of points strictly on the positive side of the oriented plane (p, q, r)."""
    if len({p, q, r}) != 3:
        raise ValueError("facet vertices must be distinct")
    return _positive_count(point_set.scaled, p, q, r)


def oriented_facets(point_set: PointSet) -> Iterator[FacetRecord]:
    """Every oriented triangle with its j, both orientations of each triple."""
    n = len(point_set)
    coords = point_set.scaled
    for p, q, r in combinations(range(n), 3):
        j = _positive_count(coords, p, q, r)
        yield FacetRecord((p, q, r), j)
        yield FacetRecord((p, r, q), n - 3 - j)


def _histogram_chunk(coords: Tuple[Tuple[int, ...], ...], first_indices: List[int]) -> List[int]:
    """Partial e_j counts over the triples whose smallest index is in ``first_indices``."""
    n = len(coords)
    counts = [0] * max(n - 2, 0)
    for p in first_indices:
        for q, r in combinations(range(p + 1, n), 2):
            j = _positive_count(coords, p, q, r)
            counts[j] += 1
            counts[n - 3 - j] += 1
    return counts


def build_facet_histogram(point_set: PointSet, workers: int = 1) -> FacetHistogram:
    """
    Count oriented j-facets by brute force over all triples, O(n^4) signs.

    With ``workers > 1`` the triples are partitioned by smallest index and
    the partial histograms are added; the result does not depend on the
    partitioning.
    """
    if point_set.dimension != 3:
        raise ValueError("j-facets are defined for 3D sets")
    ensure_general_position(point_set)
    n = len(point_set)
    coords = point_set.scaled
    if n < 3:
        return FacetHistogram(n, ())

    if workers <= 1 or n < 12:
        return FacetHistogram(n, tuple(_histogram_chunk(coords, list(range(n)))))

    chunks = [list(range(w, n, workers)) for w in range(workers)]
    totals = [0] * (n - 2)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for partial in pool.map(_histogram_chunk, [coords] * len(chunks), chunks):
            totals = [a + b for a, b in zip(totals, partial)]
    logger.debug("facet histogram for n=%d built with %d workers", n, workers)
    return FacetHistogram(n, tuple(totals))


def in_welzl_range(j: int, n: int) -> bool:
    return 0 <= 2 * j <= n - 4


def _require_welzl_range(name: str, j: int, n: int) -> None:
    if not in_welzl_range(j, n):
        raise BoundOutOfRangeError(name, j, n, "0 <= 2j <= n-4")


def welzl_bound(j: int, n: int) -> int:
    """E_j(P) <= 2 [C(j+2, 2) n - 2 C(j+3, 3)] for 0 <= 2j <= n-4, tight iff convex."""
    _require_welzl_range("welzl_bound", j, n)
    return 2 * (comb(j + 2, 2) * n - 2 * comb(j + 3, 3))


def corollary_ej(j: int, n: int) -> int:
    """e_j(P) = 2(j+1)n - 2(j+1)(j+2) for convex P and 0 <= 2j <= n-4."""
    _require_welzl_range("corollary_ej", j, n)
    return 2 * (j + 1) * n - 2 * (j + 1) * (j + 2)


def welzl_entries(histogram: FacetHistogram, convex: bool) -> List[BoundEntry]:
    """
    One Welzl entry per j plus the tightness entry.

    Tightness: a convex set must meet the bound at every in-range j; any
    other set must fall strictly below it for at least one in-range j.
    """
    n = histogram.n
    entries = []
    in_range = equal = strict = 0
    for j, E_j in enumerate(histogram.E):
        if in_welzl_range(j, n):
            entry = BoundEntry.compare("welzl E_j", E_j, welzl_bound(j, n), Relation.LE, j=j)
            in_range += 1
            if E_j == entry.formula:
                equal += 1
            elif E_j < entry.formula:
                strict += 1
        else:
            entry = BoundEntry.compare("welzl E_j", E_j, None, Relation.LE, j=j)
        entries.append(entry)

    if in_range:
        if convex:
            entries.append(BoundEntry.compare("welzl tightness (convex: all equal)", equal, in_range, Relation.EQ))
        else:
            entries.append(BoundEntry.compare("welzl tightness (non-convex: some strict)", strict, 1, Relation.GE))
    return entries


def check_welzl(point_set: PointSet, histogram: Optional[FacetHistogram] = None, workers: int = 1) -> BoundReport:
    """Compare the empirical E_j with Welzl's bound for every in-range j."""
    if histogram is None:
        histogram = build_facet_histogram(point_set, workers=workers)
    convex = bool(check_convex_position(point_set))
    report = BoundReport(point_set_digest(point_set), len(point_set), point_set.dimension, convex)
    report.extend(welzl_entries(histogram, convex))
    return report


def segment_facet_count(p: int, q: int, j: int, point_set: PointSet) -> int:
    """Number of oriented j-facets having pq as an edge."""
    coords = point_set.scaled
    n = len(coords)
    count = 0
    for r in range(n):
        if r == p or r == q:
            continue
        positive = _positive_count(coords, p, q, r)
        if positive == j:
            count += 1
        if n - 3 - positive == j:
            count += 1
    return count
