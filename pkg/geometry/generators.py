"""
Deterministic generators for the point sets the verification code consumes.

Every generator is a pure function of its GenSpec: the same spec always
yields the same points, in the same order, with exact rational coordinates.
"""
import logging
import random
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exactgeom import (
    PointSet,
    PositionKind,
    PositionStatus,
    check_convex_position,
    check_general_position,
    incircle,
    orient2d,
)
from .exceptions import GenerationExhaustedError, StructureLostError
from .hull import HullGraph, convex_hull_3d
from .lift import lift_set

logger = logging.getLogger(__name__)

KINDS = ("random-planar", "lifted-random", "sphere-convex", "paper-construction", "convex-plus-interior")
KIND_ALIASES = {"planar": "random-planar", "lifted": "lifted-random", "sphere": "sphere-convex"}

# tangent half-angles: tan(22.5 deg) ~ 408/985 and tan(60 deg) ~ 1351/780
ROTATION_45 = Fraction(408, 985)
ROTATION_120 = Fraction(1351, 780)
# arc parameter window; |v| <= 7/100 keeps cos t above 0.99
ARC_HALF_WIDTH = Fraction(7, 100)


def canonical_kind(kind: str) -> str:
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: Optional[int] = None
    m: Optional[int] = None
    seed: int = 0
    grid: int = 1_000_000
    denominator: int = 1_000_000
    jitter: int = 8
    max_rejections: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        if self.kind == "paper-construction":
            if self.m is None or self.m < 1:
                raise ValueError("paper-construction needs m >= 1")
        elif self.n is None or self.n < 1:
            raise ValueError(f"{self.kind} needs n >= 1")
        if self.grid < 1 or self.denominator < 1:
            raise ValueError("grid and denominator must be positive")
        if self.jitter < 0:
            raise ValueError("jitter must be non-negative")

    @property
    def size(self) -> int:
        return 4 * self.m if self.kind == "paper-construction" else self.n

    @property
    def dimension(self) -> int:
        return 2 if self.kind == "random-planar" else 3

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GenSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown GenSpec fields: {', '.join(sorted(unknown))}")
        return cls(**data)


def _general(point_set: PointSet) -> PointSet:
    point_set._record_status(PositionStatus(PositionKind.GENERAL))
    return point_set


def _extends_planar(points: List[Tuple[int, int]], candidate: Tuple[int, int]) -> bool:
    if candidate in points:
        return False
    for a, b in combinations(points, 2):
        if orient2d(a, b, candidate) == 0:
            return False
    for a, b, c in combinations(points, 3):
        if incircle(a, b, c, candidate) == 0:
            return False
    return True


def _planar_grid_points(n: int, seed: int, grid: int, max_rejections: int) -> List[Tuple[int, int]]:
    rng = random.Random(seed)
    points: List[Tuple[int, int]] = []
    rejections = 0
    while len(points) < n:
        candidate = (rng.randint(-grid, grid), rng.randint(-grid, grid))
        if _extends_planar(points, candidate):
            points.append(candidate)
            continue
        rejections += 1
        if rejections > max_rejections:
            raise GenerationExhaustedError(
                f"gave up after {rejections} rejected candidates with {len(points)} of {n} points placed"
            )
    if rejections:
        logger.debug("planar generator rejected %d candidates for n=%d", rejections, n)
    return points


def gen_random_planar(n: int, seed: int = 0, grid: int = 1_000_000, max_rejections: int = 10_000) -> PointSet:
    """
    n integer points in [-grid, grid]^2, no three collinear and no four
    cocircular. Each candidate is checked exactly against the points already
    placed and rejected on any zero sign.

    Raises:
        GenerationExhaustedError: after ``max_rejections`` rejected candidates.
    """
    return _general(PointSet(_planar_grid_points(n, seed, grid, max_rejections), dimension=2))


def inverse_stereographic(a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction, Fraction]:
    """Rational point of the unit sphere over (a, b), projecting from (0, 0, -1)."""
    norm = 1 + a * a + b * b
    return 2 * a / norm, 2 * b / norm, (1 - a * a - b * b) / norm


def stereographic(point: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
    x, y, z = point
    return Fraction(x) / (1 + z), Fraction(y) / (1 + z)


def gen_convex_3d(
    n: int,
    seed: int = 0,
    mode: str = "lifted",
    grid: int = 1_000_000,
    denominator: int = 1_000_000,
    max_rejections: int = 10_000,
) -> PointSet:
    """
    Convex-position 3D set.

    ``lifted`` lifts a random planar set onto the paraboloid. ``sphere``
    maps random grid points of [-2, 2]^2 (step 1/denominator) onto the unit
    sphere. Four sphere points are coplanar exactly when their planar
    preimages are cocircular or collinear, so the planar rejection already
    gives general position; both modes are still verified.
    """
    if n < 4:
        raise ValueError("a convex 3D set needs n >= 4")
    if mode == "lifted":
        point_set = lift_set(gen_random_planar(n, seed, grid, max_rejections)).lifted
    elif mode == "sphere":
        planar = _planar_grid_points(n, seed, 2 * denominator, max_rejections)
        point_set = PointSet(
            [inverse_stereographic(Fraction(a, denominator), Fraction(b, denominator)) for a, b in planar],
            dimension=3,
        )
    else:
        raise ValueError(f"unknown convex mode {mode!r}")

    if not check_general_position(point_set).is_general:
        raise GenerationExhaustedError(f"{mode} set lost general position: {point_set.position_status.describe()}")
    convex = check_convex_position(point_set)
    if not convex:
        raise GenerationExhaustedError(f"{mode} set is not in convex position (point {convex.witness})")
    return point_set


def _tangent_rotation(u: Fraction) -> Tuple[Fraction, Fraction]:
    """(cos, sin) of twice the angle whose tangent is u; exactly on the unit circle."""
    return (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)


def _rotate_x(point, cos, sin):
    x, y, z = point
    return x, y * cos - z * sin, y * sin + z * cos


def _rotate_z(point, cos, sin):
    x, y, z = point
    return x * cos - y * sin, x * sin + y * cos, z


def _arc_parameters(m: int) -> List[Fraction]:
    if m == 1:
        return [Fraction(0)]
    step = 2 * ARC_HALF_WIDTH / (m - 1)
    return [-ARC_HALF_WIDTH + i * step for i in range(m)]


def construction_chains(m: int) -> List[List[Tuple[Fraction, Fraction, Fraction]]]:
    """
    The four unperturbed chains C_p, C_q, C_r, C_s, each of m points exactly
    on the unit sphere, evenly spaced in the arc parameter.
    """
    cos45, sin45 = _tangent_rotation(ROTATION_45)
    cos120, sin120 = _tangent_rotation(ROTATION_120)
    chain_p, chain_s = [], []
    for v in _arc_parameters(m):
        cos_t, sin_t = _tangent_rotation(v)
        chain_p.append(_rotate_x((cos_t, Fraction(0), sin_t), cos45, sin45))
        chain_s.append((sin_t, Fraction(0), cos_t))
    chain_q = [_rotate_z(p, cos120, sin120) for p in chain_p]
    chain_r = [_rotate_z(q, cos120, sin120) for q in chain_q]
    return [chain_p, chain_q, chain_r, chain_s]


@dataclass(frozen=True)
class ConstructionStructure:
    convex: bool
    missing_edges: Tuple[Tuple[int, int], ...]
    missing_fan_edges: Tuple[Tuple[int, int], ...] = ()

    @property
    def holds(self) -> bool:
        return self.convex and not self.missing_edges and not self.missing_fan_edges


def construction_structure(point_set: PointSet, m: int, hull: Optional[HullGraph] = None) -> ConstructionStructure:
    """
    Convex position, hull adjacency of consecutive points in each chain, and
    the fan from the last point of C_s (index 4m - 1) to every point of C_p
    and of C_r.
    """
    if len(point_set) != 4 * m:
        raise ValueError(f"expected {4 * m} points for m={m}, got {len(point_set)}")
    hull = hull or convex_hull_3d(point_set)
    convex = len(hull.vertices) == len(point_set)
    missing = tuple(
        (chain * m + i, chain * m + i + 1)
        for chain in range(4)
        for i in range(m - 1)
        if not hull.has_edge(chain * m + i, chain * m + i + 1)
    )
    apex = 4 * m - 1
    fan = list(range(0, m)) + list(range(2 * m, 3 * m))
    missing_fan = tuple((i, apex) for i in fan if not hull.has_edge(i, apex))
    return ConstructionStructure(convex, missing, missing_fan)


def gen_paper_construction(
    m: int,
    seed: int = 0,
    denominator: int = 1_000_000,
    jitter: int = 8,
    max_rejections: int = 10_000,
) -> PointSet:
    """
    The four-chain construction with n = 4m points.

    Chain points are snapped in stereographic coordinates to the
    1/denominator grid, shifted by a seeded integer in [-jitter, jitter]
    and mapped back, so each one lies exactly on the unit sphere. Draws that
    are not in general position are redrawn.

    Raises:
        GenerationExhaustedError: if no draw reaches general position.
        StructureLostError: if the snapped set loses convex position, a
            chain adjacency or a fan adjacency; a larger denominator usually fixes it.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = random.Random(seed)
    anchors = [
        (round(a * denominator), round(b * denominator))
        for chain in construction_chains(m)
        for a, b in (stereographic(point) for point in chain)
    ]

    for attempt in range(max_rejections + 1):
        points = []
        for a, b in anchors:
            da = rng.randint(-jitter, jitter)
            db = rng.randint(-jitter, jitter)
            points.append(inverse_stereographic(Fraction(a + da, denominator), Fraction(b + db, denominator)))
        try:
            point_set = PointSet(points, dimension=3)
        except ValueError:
            continue
        if check_general_position(point_set).is_general:
            break
        logger.warning("construction draw %d for m=%d is degenerate, redrawing", attempt, m)
    else:
        raise GenerationExhaustedError(f"no general-position draw for m={m} after {max_rejections} attempts")

    structure = construction_structure(point_set, m)
    if not structure.holds:
        raise StructureLostError(
            f"m={m}, denominator={denominator}: convex={structure.convex}, "
            f"missing chain edges {list(structure.missing_edges)}, "
            f"missing fan edges {list(structure.missing_fan_edges)}"
        )
    return point_set


def gen_convex_plus_interior(
    n: int, seed: int = 0, grid: int = 1_000_000, max_rejections: int = 10_000
) -> PointSet:
    """
    n - 1 lifted convex points plus the centroid of four of them, which lies
    strictly inside their tetrahedron and so inside the hull.
    """
    if n < 5:
        raise ValueError("convex-plus-interior needs n >= 5")
    base = gen_convex_3d(n - 1, seed, "lifted", grid=grid, max_rejections=max_rejections)
    rng = random.Random(seed)
    for _ in range(max_rejections + 1):
        chosen = sorted(rng.sample(range(n - 1), 4))
        centroid = tuple(sum(Fraction(base[i][axis]) for i in chosen) / 4 for axis in range(3))
        point_set = PointSet(list(base.points) + [centroid], dimension=3)
        if check_general_position(point_set).is_general:
            return point_set
    raise GenerationExhaustedError(f"no general-position interior point for n={n}")


def generate(spec: GenSpec) -> PointSet:
    if spec.kind == "random-planar":
        return gen_random_planar(spec.n, spec.seed, spec.grid, spec.max_rejections)
    if spec.kind == "lifted-random":
        return gen_convex_3d(spec.n, spec.seed, "lifted", spec.grid, spec.denominator, spec.max_rejections)
    if spec.kind == "sphere-convex":
        return gen_convex_3d(spec.n, spec.seed, "sphere", spec.grid, spec.denominator, spec.max_rejections)
    if spec.kind == "paper-construction":
        return gen_paper_construction(spec.m, spec.seed, spec.denominator, spec.jitter, spec.max_rejections)
    return gen_convex_plus_interior(spec.n, spec.seed, spec.grid, spec.max_rejections)
