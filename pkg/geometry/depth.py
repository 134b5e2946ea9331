"""
Depth of segments in 3D point sets and circular depth of planar pairs.

The depth of pq is the smallest k such that every plane through p and q has
at least k points strictly on each side. As a plane rotates about the line
pq its side counts only change when it passes through a third point, and at
that moment the point sits on neither side, so the minimum over all planes
is reached at a plane through some third point r. Both algorithms below
only look at those candidate planes.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import accumulate, combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .exactgeom import PointSet, ensure_general_position, plane_through, side_of_plane, sign
from .exceptions import CollinearWithAxisError, DegeneratePositionError
from .lift import circle_side_counts

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Coords = Sequence[Sequence[int]]


@dataclass(frozen=True)
class DepthRecord:
    """Depth of a pair with a third point whose plane (or circle) attains it."""

    pair: Pair
    depth: int
    witness: Optional[int]


def max_possible_depth(n: int) -> int:
    return (n - 2) // 2


@dataclass(frozen=True)
class DepthHistogram:
    """s[j] = number of pairs with depth exactly j."""

    n: int
    s: Tuple[int, ...]

    @property
    def S(self) -> Tuple[int, ...]:
        return tuple(accumulate(self.s))

    def s_at(self, j: int) -> int:
        return self.s[j] if 0 <= j < len(self.s) else 0

    def S_at(self, j: int) -> int:
        if j < 0:
            return 0
        return sum(self.s[: j + 1])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"j": range(len(self.s)), "s_j": self.s, "S_j": self.S})


def depth_histogram(records: Iterable[DepthRecord], n: int) -> DepthHistogram:
    counts = [0] * (max_possible_depth(n) + 1)
    for record in records:
        counts[record.depth] += 1
    return DepthHistogram(n, tuple(counts))


def _bruteforce(coords: Coords, p: int, q: int) -> Tuple[int, Optional[int]]:
    best: Optional[int] = None
    witness: Optional[int] = None
    for r in range(len(coords)):
        if r == p or r == q:
            continue
        plane = plane_through(coords[p], coords[q], coords[r])
        if plane[:3] == (0, 0, 0):
            raise CollinearWithAxisError(f"point {r} lies on the line through {p} and {q}", (p, q, r))
        positive = negative = 0
        for s, point in enumerate(coords):
            if s == p or s == q or s == r:
                continue
            side = side_of_plane(plane, point)
            if side > 0:
                positive += 1
            elif side < 0:
                negative += 1
            else:
                raise DegeneratePositionError("four coplanar points", tuple(sorted((p, q, r, s))))
        value = min(positive, negative)
        if best is None or value < best:
            best, witness = value, r
    return (best or 0), witness


def _cross(u: Sequence[int], w: Sequence[int]) -> Tuple[int, int, int]:
    return (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])


def _sweep(coords: Coords, p: int, q: int) -> Tuple[int, Optional[int]]:
    a = coords[p]
    axis = tuple(coords[q][i] - a[i] for i in range(3))
    others = [s for s in range(len(coords)) if s != p and s != q]
    if not others:
        return 0, None

    # w = s - a. For points s, t the sign of det(axis, w_s, w_t) is the sign of
    # cross(proj w_s, proj w_t) . axis for the projections onto the plane
    # perpendicular to the axis (they differ by the factor |axis|^4), so the
    # angular order around the line needs no explicit projection.
    offsets: Dict[int, Tuple[int, int, int]] = {}
    normals: Dict[int, Tuple[int, int, int]] = {}
    for s in others:
        w = tuple(coords[s][i] - a[i] for i in range(3))
        normal = _cross(axis, w)
        if normal == (0, 0, 0):
            raise CollinearWithAxisError(f"point {s} lies on the line through {p} and {q}", (p, q, s))
        offsets[s] = w
        normals[s] = normal

    def turn(s: int, t: int) -> int:
        n_s, w_t = normals[s], offsets[t]
        value = sign(n_s[0] * w_t[0] + n_s[1] * w_t[1] + n_s[2] * w_t[2])
        if value == 0:
            raise DegeneratePositionError("four coplanar points", tuple(sorted((p, q, s, t))))
        return value

    # Fold every direction into the half-turn [0, pi) starting at the first
    # point; flip = -1 marks points whose true direction is the opposite one.
    reference = others[0]
    flip = {reference: 1}
    for s in others[1:]:
        flip[s] = turn(reference, s)

    def compare(s: int, t: int) -> int:
        if s == t:
            return 0
        if s == reference:
            return -1
        if t == reference:
            return 1
        return -1 if flip[s] * flip[t] * turn(s, t) > 0 else 1

    order = sorted(others, key=cmp_to_key(compare))

    # The plane through the k-th direction has on its positive side the
    # unflipped points after it and the flipped points before it.
    m = len(order)
    unflipped_total = sum(1 for s in order if flip[s] > 0)
    unflipped_seen = flipped_seen = 0
    best: Optional[int] = None
    witness: Optional[int] = None
    for s in order:
        if flip[s] > 0:
            unflipped_seen += 1
        positive = (unflipped_total - unflipped_seen) + flipped_seen
        value = min(positive, m - 1 - positive)
        if best is None or value < best:
            best, witness = value, s
        if flip[s] < 0:
            flipped_seen += 1
    return best, witness


ALGORITHMS: Dict[str, Callable[[Coords, int, int], Tuple[int, Optional[int]]]] = {
    "sweep": _sweep,
    "brute": _bruteforce,
}


def _record(coords: Coords, p: int, q: int, algorithm: str) -> DepthRecord:
    if p == q:
        raise ValueError("a segment needs two distinct endpoints")
    depth, witness = ALGORITHMS[algorithm](coords, p, q)
    return DepthRecord((p, q), depth, witness)


def segment_depth_bruteforce(p: int, q: int, point_set: PointSet) -> DepthRecord:
    """
    Depth of pq as the minimum, over every third point r, of the smaller
    strict side count of the plane through p, q, r. O(n^2) predicates; the
    witness is the smallest r attaining the minimum.
    """
    return _record(point_set.scaled, p, q, "brute")


def segment_depth_sweep(p: int, q: int, point_set: PointSet) -> DepthRecord:
    """
    Same contract as the brute force, in O(n log n): the other points are
    sorted by their exact angle around the line pq and a half-plane is
    rotated through them, the side count changing by one at each event.

    Raises:
        CollinearWithAxisError: if a third point lies on the line pq.
        DegeneratePositionError: if two other points are coplanar with pq.
    """
    return _record(point_set.scaled, p, q, "sweep")


def segment_depth(p: int, q: int, point_set: PointSet, algorithm: str = "sweep") -> DepthRecord:
    return _record(point_set.scaled, p, q, algorithm)


def _depth_chunk(coords: Coords, pairs: List[Pair], algorithm: str) -> List[DepthRecord]:
    return [_record(coords, p, q, algorithm) for p, q in pairs]


def _pair_list(pairs: Optional[Iterable[Pair]], n: int) -> List[Pair]:
    """Sorted index pairs; all C(n, 2) pairs when ``pairs`` is None."""
    if pairs is None:
        return list(combinations(range(n), 2))
    pair_list = []
    for pair in pairs:
        p, q = sorted(pair)
        if p < 0 or q >= n:
            raise ValueError(f"pair {p},{q} is out of range for {n} points")
        if p == q:
            raise ValueError("a pair needs two distinct points")
        pair_list.append((p, q))
    return pair_list


def all_segment_depths(
    point_set: PointSet,
    algorithm: str = "sweep",
    workers: int = 1,
    pairs: Optional[Iterable[Pair]] = None,
) -> Tuple[List[DepthRecord], DepthHistogram]:
    """
    Depth of every unordered pair (or of ``pairs``), ordered by pair index.

    The histogram always has sum(s_j) equal to the number of records.
    """
    if point_set.dimension != 3:
        raise ValueError("segment depth is defined for 3D sets; use planar_pair_depth in the plane")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    ensure_general_position(point_set)
    coords = point_set.scaled
    pair_list = _pair_list(pairs, len(coords))

    if workers <= 1 or len(pair_list) < 64:
        records = _depth_chunk(coords, pair_list, algorithm)
    else:
        chunks = [pair_list[w::workers] for w in range(workers)]
        records = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for partial in pool.map(_depth_chunk, [coords] * workers, chunks, [algorithm] * workers):
                records.extend(partial)
        records.sort(key=lambda record: record.pair)

    logger.debug("computed %d segment depths with %s", len(records), algorithm)
    return records, depth_histogram(records, len(coords))


def max_depth_pair(records_or_set) -> DepthRecord:
    """Deepest pair; ties go to the lexicographically smallest pair."""
    if isinstance(records_or_set, PointSet):
        records, _ = all_segment_depths(records_or_set)
    else:
        records = list(records_or_set)
    if not records:
        raise ValueError("no pairs to choose from")
    return min(records, key=lambda record: (-record.depth, record.pair))


def planar_pair_depth(p: int, q: int, point_set: PointSet) -> DepthRecord:
    """
    Circular depth of a planar pair: the minimum over third points r of the
    smaller of the inside / outside counts of the circle through p, q, r,
    computed with the incircle predicate only.
    """
    if point_set.dimension != 2:
        raise ValueError("circular depth is defined for planar sets")
    if p == q:
        raise ValueError("a pair needs two distinct points")
    best: Optional[int] = None
    witness: Optional[int] = None
    for r in range(len(point_set)):
        if r == p or r == q:
            continue
        inside, outside = circle_side_counts(p, q, r, point_set)
        value = min(inside, outside)
        if best is None or value < best:
            best, witness = value, r
    return DepthRecord((p, q), best or 0, witness)


def all_planar_pair_depths(
    point_set: PointSet, pairs: Optional[Iterable[Pair]] = None
) -> Tuple[List[DepthRecord], DepthHistogram]:
    """Circular depth of every planar pair (or of ``pairs``), ordered as given."""
    if point_set.dimension != 2:
        raise ValueError("circular depth is defined for planar sets")
    pair_list = _pair_list(pairs, len(point_set))
    ensure_general_position(point_set)
    records = [planar_pair_depth(p, q, point_set) for p, q in pair_list]
    return records, depth_histogram(records, len(point_set))


def probe_generic_planes(
    p: int, q: int, point_set: PointSet, rng: random.Random, trials: int = 64, spread: int = 1000
) -> Optional[int]:
    """
    Smallest min(side count) over random planes through p and q containing
    no third point. Never below the candidate-plane depth; None when every
    draw hit a third point.
    """
    coords = point_set.scaled
    a = coords[p]
    axis = tuple(coords[q][i] - a[i] for i in range(3))
    offsets = [tuple(point[i] - a[i] for i in range(3)) for s, point in enumerate(coords) if s not in (p, q)]
    best: Optional[int] = None
    for _ in range(trials):
        direction = tuple(rng.randint(-spread, spread) for _ in range(3))
        normal = _cross(axis, direction)
        if normal == (0, 0, 0):
            continue
        sides = [sign(normal[0] * w[0] + normal[1] * w[1] + normal[2] * w[2]) for w in offsets]
        if 0 in sides:
            continue
        positive = sides.count(1)
        value = min(positive, len(sides) - positive)
        if best is None or value < best:
            best = value
    return best


def depth_zero_pairs(records: Iterable[DepthRecord]) -> List[Pair]:
    return [record.pair for record in records if record.depth == 0]


def depth_records_frame(records: Iterable[DepthRecord]) -> pd.DataFrame:
    rows = [
        {"pair_i": r.pair[0], "pair_j": r.pair[1], "depth": r.depth, "witness": r.witness}
        for r in records
    ]
    frame = pd.DataFrame(rows, columns=["pair_i", "pair_j", "depth", "witness"])
    frame["witness"] = frame["witness"].astype("Int64")
    return frame
