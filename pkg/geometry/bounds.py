"""
Closed-form bounds on segment depth and the per-set verification report.

Everything here is exact: integers, Fractions, and numbers of the form
a + b*sqrt(c) compared against integers by squaring.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd

from .depth import DepthHistogram, all_segment_depths, max_depth_pair
from .exactgeom import PointSet, ensure_general_position, sign
from .exceptions import BoundOutOfRangeError
from .facets import (
    FacetHistogram,
    build_facet_histogram,
    corollary_ej,
    in_welzl_range,
    segment_facet_count,
    welzl_bound,
    welzl_entries,
)
from .hull import convex_hull_3d, s1_bound_report
from .lift import lift_set
from .pointset_io import point_set_digest
from .reports import BoundEntry, BoundReport, Relation, Severity

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def prop_Sj_bound(j: int, n: int) -> int:
    """S_j <= 3(j+1)n - 3(j+1)(j+2) for convex sets, 0 <= 2j <= n-4."""
    if not in_welzl_range(j, n):
        raise BoundOutOfRangeError("prop_Sj_bound", j, n, "0 <= 2j <= n-4")
    return 3 * (j + 1) * n - 3 * (j + 1) * (j + 2)


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number a + b * sqrt(c), with rational a, b and c >= 0."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c < 0:
            raise ValueError("the radicand must be non-negative")

    def __mul__(self, factor: Number) -> "QuadraticSurd":
        return QuadraticSurd(self.a * factor, self.b * factor, self.c)

    __rmul__ = __mul__

    def compare(self, other: Number) -> int:
        """Sign of (self - other), decided without floating point."""
        x = self.a - Fraction(other)
        if self.b == 0 or self.c == 0:
            return sign(x)
        sx, sb = sign(x), sign(self.b)
        if sx == 0:
            return sb
        if sx == sb:
            return sx
        # opposite signs: the larger magnitude wins
        return sign(x * x - self.b * self.b * self.c) * sx

    def __lt__(self, other: Number) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Number) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self.compare(other) >= 0

    def floor(self) -> int:
        # integer square root of the radicand gives a guess within one unit
        root = Fraction(math.isqrt(self.c.numerator * self.c.denominator), self.c.denominator)
        guess = math.floor(self.a + self.b * root)
        while self.compare(guess) < 0:
            guess -= 1
        while self.compare(guess + 1) >= 0:
            guess += 1
        return guess

    def ceil(self) -> int:
        low = self.floor()
        return low if self.compare(low) == 0 else low + 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
            "c": [self.c.numerator, self.c.denominator],
        }

    def __str__(self) -> str:
        return f"{self.a} {'-' if self.b < 0 else '+'} {abs(self.b)}*sqrt({self.c})"


@dataclass(frozen=True)
class DepthGuarantee:
    n: int
    root: QuadraticSurd
    floor: int

    @property
    def root_floor(self) -> int:
        return self.root.floor()

    @property
    def root_ceiling(self) -> int:
        return self.root.ceil()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "root": self.root.to_dict(),
            "root_text": str(self.root),
            "root_floor": self.root_floor,
            "root_ceiling": self.root_ceiling,
            "guarantee_floor": self.floor,
        }


def depth_guarantee(n: int) -> DepthGuarantee:
    """
    Smallest depth the S_j bound forces on some segment of a convex set.

    ``floor`` is the smallest in-range j whose S_j bound reaches C(n, 2):
    below it, S_{j-1} < C(n, 2) so not every pair can be that shallow. When
    no in-range j reaches C(n, 2) the bound still forces depth j_max + 1.
    ``root`` is the smaller root (n-3)/2 - sqrt(((n-2)^2 - 1)/12) of the
    quadratic S_j bound = C(n, 2).
    """
    if n < 4:
        raise ValueError("depth_guarantee needs n >= 4")
    root = QuadraticSurd(Fraction(n - 3, 2), -1, Fraction((n - 2) ** 2 - 1, 12))
    pairs = comb(n, 2)
    j_max = (n - 4) // 2
    floor = next((j for j in range(j_max + 1) if prop_Sj_bound(j, n) >= pairs), j_max + 1)
    return DepthGuarantee(n, root, floor)


def asymptotic_coefficient() -> QuadraticSurd:
    """1/2 - sqrt(1/12), roughly 0.2113: the linear rate of the guarantee."""
    return QuadraticSurd(Fraction(1, 2), -1, Fraction(1, 12))


def guarantee_envelope(n: int, constant: int = 2) -> int:
    """floor((1/2 - 1/sqrt(12)) n) - constant, the lower envelope of guarantee_floor."""
    return (asymptotic_coefficient() * n).floor() - constant


def conj2_in_range(j: int, n: int) -> bool:
    return 0 <= j <= -(-n // 4) - 1


def conj2_bound(j: int, n: int) -> int:
    """Conjectured s_j <= 3n - 8j - 6 for 0 <= j <= ceil(n/4) - 1, evaluated literally."""
    if not conj2_in_range(j, n):
        raise BoundOutOfRangeError("conj2_bound", j, n, "0 <= j <= ceil(n/4)-1")
    return 3 * n - 8 * j - 6


def conj2_partial_sum(last: int, n: int) -> int:
    """Closed form of sum(conj2_bound(j, n) for j in 0..last)."""
    return 3 * (last + 1) * n - 8 * last * (last + 1) // 2 - 6 * (last + 1)


def conj3_threshold(n: int) -> Tuple[int, int]:
    """(pair count, depth threshold) = (n + 2, floor(n/4) - 1)."""
    if n < 4:
        raise ValueError("conj3_threshold needs n >= 4")
    return n + 2, n // 4 - 1


def conj3_derivation(n: int) -> Tuple[int, int, bool]:
    """
    The counting step behind the pair conjecture: the conjectured s_j for
    j < floor(n/4) - 1 leave at least n + 2 pairs. Returns (lhs, rhs, holds).
    """
    pairs, threshold = conj3_threshold(n)
    lhs = sum(3 * n - 8 * j - 6 for j in range(threshold))
    rhs = comb(n, 2) - pairs
    return lhs, rhs, lhs <= rhs


def bound_table(n: int, j: int) -> Dict[str, Any]:
    """Every closed form at (n, j); values outside their range are None."""

    def guarded(function):
        try:
            return function(j, n)
        except BoundOutOfRangeError:
            return None

    table: Dict[str, Any] = {
        "n": n,
        "j": j,
        "welzl_bound": guarded(welzl_bound),
        "corollary_ej": guarded(corollary_ej),
        "prop_Sj_bound": guarded(prop_Sj_bound),
        "conj2_bound": guarded(conj2_bound),
    }
    if n >= 4:
        pairs, threshold = conj3_threshold(n)
        lhs, rhs, holds = conj3_derivation(n)
        table["conj3_threshold"] = {"pairs": pairs, "depth": threshold}
        table["conj3_derivation"] = {"lhs": lhs, "rhs": rhs, "holds": holds}
        table["depth_guarantee"] = depth_guarantee(n).to_dict()
    else:
        table["conj3_threshold"] = table["conj3_derivation"] = table["depth_guarantee"] = None
    return table


@dataclass(frozen=True)
class ConstructionAudit:
    """s_j of a set against the two candidate formulas 3n-8j-6 and 4n-8j-6."""

    n: int
    s: Tuple[int, ...]
    rows: Tuple[Tuple[int, int, int, int], ...]

    @property
    def histogram_complete(self) -> bool:
        return sum(self.s) == comb(self.n, 2)

    @property
    def matches(self) -> Optional[str]:
        if self.rows and all(s_j == three for _, s_j, three, _ in self.rows):
            return "3n-8j-6"
        if self.rows and all(s_j == four for _, s_j, _, four in self.rows):
            return "4n-8j-6"
        return None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=["j", "s_j", "3n-8j-6", "4n-8j-6"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "s": list(self.s),
            "rows": [dict(zip(("j", "s_j", "3n-8j-6", "4n-8j-6"), row)) for row in self.rows],
            "matches": self.matches,
            "histogram_complete": self.histogram_complete,
        }


def construction_audit(point_set_or_histogram, workers: int = 1) -> ConstructionAudit:
    """Audit j = 0 .. n/4 - 1. Records which formula matches; asserts neither."""
    if isinstance(point_set_or_histogram, DepthHistogram):
        histogram = point_set_or_histogram
    else:
        _, histogram = all_segment_depths(point_set_or_histogram, workers=workers)
    n = histogram.n
    rows = tuple(
        (j, histogram.s_at(j), 3 * n - 8 * j - 6, 4 * n - 8 * j - 6)
        for j in range(n // 4)
    )
    return ConstructionAudit(n, histogram.s, rows)


def _two_facet_entries(point_set: PointSet, records, n: int) -> List[BoundEntry]:
    entries = []
    for j in range(n):
        if not in_welzl_range(j, n):
            break
        shallow = [record.pair for record in records if record.depth <= j]
        fewest = min((segment_facet_count(p, q, j, point_set) for p, q in shallow), default=2)
        entries.append(BoundEntry.compare("two j-facets per segment of depth <= j", fewest, 2, Relation.GE, j=j))
    return entries


def verify_set(
    point_set: PointSet,
    workers: int = 1,
    algorithm: str = "sweep",
    two_facet: bool = False,
    facets: Optional[FacetHistogram] = None,
) -> BoundReport:
    """
    Run the facet histogram, the depth histogram and the hull analysis and
    compare every quantity with its closed form.

    A planar set is verified through its lift. Statements whose hypothesis
    is convex position are only emitted for convex sets; conjectures carry
    CONJECTURE severity.
    """
    lifted_from = None
    if point_set.dimension == 2:
        lifted_from = point_set_digest(point_set)
        point_set = lift_set(point_set).lifted
    ensure_general_position(point_set)
    n = len(point_set)

    histogram = facets or build_facet_histogram(point_set, workers=workers)
    records, depths = all_segment_depths(point_set, algorithm=algorithm, workers=workers)
    hull = convex_hull_3d(point_set) if n >= 4 else None
    convex = hull is not None and len(hull.vertices) == n
    logger.debug("verifying n=%d convex=%s", n, convex)

    report = BoundReport(point_set_digest(point_set), n, 3, convex)
    report.extend(welzl_entries(histogram, convex))

    for j in range(n):
        if not in_welzl_range(j, n):
            break
        if convex:
            report.add(BoundEntry.compare("corollary e_j", histogram.e_at(j), corollary_ej(j, n), Relation.EQ, j=j))
            report.add(BoundEntry.compare("prop S_j", depths.S_at(j), prop_Sj_bound(j, n), Relation.LE, j=j))
        report.add(BoundEntry.compare("2S_j <= 3e_j", 2 * depths.S_at(j), 3 * histogram.e_at(j), Relation.LE, j=j))

    if two_facet:
        report.extend(_two_facet_entries(point_set, records, n))

    if hull is not None:
        report.add(BoundEntry.compare("s_0 = hull edges", depths.s_at(0), len(hull.edges), Relation.EQ, j=0))

    deepest = max_depth_pair(records) if records else None
    if convex:
        guarantee = depth_guarantee(n)
        report.add(BoundEntry.compare("max depth >= guarantee_floor", deepest.depth, guarantee.floor, Relation.GE))
        report.metadata["depth_guarantee"] = guarantee.to_dict()

        report.extend(s1_bound_report(point_set, s1=depths.s_at(1), workers=workers).entries)

        for j in range(n):
            if not conj2_in_range(j, n):
                break
            report.add(
                BoundEntry.compare(
                    "conj2 s_j", depths.s_at(j), conj2_bound(j, n), Relation.LE, j=j, severity=Severity.CONJECTURE
                )
            )
        pairs, threshold = conj3_threshold(n)
        deep_pairs = sum(1 for record in records if record.depth >= threshold)
        report.add(
            BoundEntry.compare(
                "conj3 pairs with depth >= floor(n/4)-1", deep_pairs, pairs, Relation.GE,
                j=threshold, severity=Severity.CONJECTURE,
            )
        )

    report.metadata.update(
        {
            "e": list(histogram.e),
            "s": list(depths.s),
            "max_depth_pair": list(deepest.pair) if deepest else None,
            "max_depth": deepest.depth if deepest else None,
            "algorithm": algorithm,
        }
    )
    if lifted_from is not None:
        report.metadata["lifted_from"] = lifted_from
    return report
