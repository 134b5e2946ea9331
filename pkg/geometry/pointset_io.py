"""
Persistence for point sets and tabular results.

Point sets are versioned JSON documents with every coordinate written as
``[numerator, denominator]``; nothing is ever stored as a decimal float.
"""
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd

from .exactgeom import PointSet, Rational, as_rational
from .exceptions import PointSetFormatError

SCHEMA_VERSION = 1


def encode_rational(value: Rational) -> List[int]:
    value = Fraction(value)
    return [value.numerator, value.denominator]


def decode_rational(raw: Any, context: str) -> Rational:
    if isinstance(raw, bool):
        raise PointSetFormatError(f"{context}: expected [numerator, denominator], got {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return as_rational(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise PointSetFormatError(f"{context}: {exc}") from exc
    if (
        isinstance(raw, list)
        and len(raw) == 2
        and all(isinstance(part, int) and not isinstance(part, bool) for part in raw)
    ):
        numerator, denominator = raw
        if denominator <= 0:
            raise PointSetFormatError(f"{context}: denominator must be positive")
        return as_rational(Fraction(numerator, denominator))
    raise PointSetFormatError(f"{context}: expected [numerator, denominator], got {raw!r}")


def dump_point_set(point_set: PointSet, genspec: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "dimension": point_set.dimension,
        "n": len(point_set),
        "points": [[encode_rational(value) for value in point] for point in point_set],
        "genspec": genspec,
    }


def parse_point_set(document: Any, source: str = "<input>") -> Tuple[PointSet, Optional[Dict[str, Any]]]:
    """
    Build a PointSet from an already-decoded document.

    Raises:
        PointSetFormatError: naming the offending point and coordinate.
    """
    if not isinstance(document, dict):
        raise PointSetFormatError("document must be a JSON object", source)
    version = document.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise PointSetFormatError(f"unsupported schema_version {version!r}", source)
    dimension = document.get("dimension")
    if dimension not in (2, 3):
        raise PointSetFormatError(f"dimension must be 2 or 3, got {dimension!r}", source)
    raw_points = document.get("points")
    if not isinstance(raw_points, list):
        raise PointSetFormatError("'points' must be a list", source)

    points = []
    for index, raw_point in enumerate(raw_points):
        if not isinstance(raw_point, list) or len(raw_point) != dimension:
            raise PointSetFormatError(f"point {index}: expected {dimension} coordinates", source)
        points.append(
            [decode_rational(raw, f"point {index}, coordinate {axis}") for axis, raw in enumerate(raw_point)]
        )

    declared = document.get("n")
    if declared is not None and declared != len(points):
        raise PointSetFormatError(f"declared n={declared} but {len(points)} points given", source)

    try:
        point_set = PointSet(points, dimension=dimension)
    except ValueError as exc:
        raise PointSetFormatError(str(exc), source) from exc
    return point_set, document.get("genspec")


def load_point_set(path: Union[str, Path]) -> Tuple[PointSet, Optional[Dict[str, Any]]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise PointSetFormatError("file not found", str(path)) from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointSetFormatError(exc.msg, str(path), exc.lineno) from exc
    return parse_point_set(document, str(path))


def write_point_set(path: Union[str, Path], point_set: PointSet, genspec: Optional[Dict[str, Any]] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(dump_point_set(point_set, genspec), indent=1) + "\n", encoding="utf-8")
    return path


def point_set_digest(point_set: PointSet) -> str:
    """sha256 over the canonical encoding of the points; the set identity in reports."""
    canonical = json.dumps(
        {"dimension": point_set.dimension, "points": dump_point_set(point_set)["points"]},
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_json(path: Union[str, Path], payload: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_csv(path: Union[str, Path], frame: pd.DataFrame) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8")
    return path
