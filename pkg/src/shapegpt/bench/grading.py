"""Artifact grading: order-independent comparison at fixed tolerances."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..dbf import format_value
from ..errors import ShapeGptError, UnreadableArtifact
from ..io import read_dataset
from ..model import Dataset, MultiPoint, NullShape, Point, PolyLine, Polygon

COORD_TOLERANCE = 1e-6


@dataclass(frozen=True)
class GradeResult:
    passed: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


def _q(x: float) -> int:
    return round(x / COORD_TOLERANCE)


def _canon_ring(ring) -> tuple:
    pts = [( _q(x), _q(y)) for x, y in ring]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if not pts:
        return ()
    pivot = min(range(len(pts)), key=lambda i: pts[i])
    return tuple(pts[pivot:] + pts[:pivot])


def _canon_geometry(g) -> tuple:
    if isinstance(g, NullShape):
        return ("null",)
    if isinstance(g, Point):
        return ("point", _q(g.x), _q(g.y))
    if isinstance(g, MultiPoint):
        return ("multipoint", tuple(sorted((_q(x), _q(y)) for x, y in g.coords)))
    if isinstance(g, PolyLine):
        return ("polyline", tuple(tuple((_q(x), _q(y)) for x, y in p) for p in g.parts))
    if isinstance(g, Polygon):
        return ("polygon", tuple(sorted(_canon_ring(r) for r in g.rings)))
    raise UnreadableArtifact(f"unknown geometry {type(g).__name__}")


def _canon_feature(d: Dataset, feat) -> tuple:
    attrs = tuple(
        (fd.name, format_value(fd, feat.attributes[fd.name])) for fd in d.fields
    )
    return (_canon_geometry(feat.geometry), attrs)


def _grade_shapefile(expected: Path, actual: Path) -> GradeResult:
    try:
        exp = read_dataset(expected)
    except (ShapeGptError, OSError) as e:
        raise UnreadableArtifact(f"expected artifact unreadable: {e}")
    try:
        act = read_dataset(actual)
    except (ShapeGptError, OSError) as e:
        return GradeResult(False, f"actual artifact unreadable: {e}")
    if exp.shape_kind is not act.shape_kind:
        return GradeResult(False, f"shape kind {act.shape_kind.label} != {exp.shape_kind.label}")
    if len(exp.features) != len(act.features):
        return GradeResult(False, f"{len(act.features)} features != {len(exp.features)}")
    if tuple(exp.fields) != tuple(act.fields):
        return GradeResult(False, "field schemas differ")
    exp_set = sorted(_canon_feature(exp, f) for f in exp.features)
    act_set = sorted(_canon_feature(act, f) for f in act.features)
    if exp_set != act_set:
        return GradeResult(False, "feature multisets differ beyond tolerance")
    return GradeResult(True)


def _grade_csv(expected: Path, actual: Path) -> GradeResult:
    try:
        with open(expected, newline="", encoding="utf-8") as f:
            exp_rows = list(csv.reader(f))
    except OSError as e:
        raise UnreadableArtifact(str(e))
    try:
        with open(actual, newline="", encoding="utf-8") as f:
            act_rows = list(csv.reader(f))
    except OSError as e:
        return GradeResult(False, f"actual csv unreadable: {e}")
    if not exp_rows or not act_rows:
        return GradeResult(exp_rows == act_rows, "empty csv mismatch" if exp_rows != act_rows else None)
    if exp_rows[0] != act_rows[0]:
        return GradeResult(False, "csv headers differ")
    if sorted(map(tuple, exp_rows[1:])) != sorted(map(tuple, act_rows[1:])):
        return GradeResult(False, "csv row sets differ")
    return GradeResult(True)


def _grade_image(expected: Path, actual: Path) -> GradeResult:
    from ..tools.render import read_png_size

    if not expected.exists():
        raise UnreadableArtifact(str(expected))
    if not actual.exists():
        return GradeResult(False, "image not produced")
    try:
        w, h = read_png_size(actual)
    except (ValueError, OSError) as e:
        return GradeResult(False, f"bad png: {e}")
    if w <= 0 or h <= 0:
        return GradeResult(False, "zero-dimension image")
    return GradeResult(True)


def grade_output(expected, actual) -> GradeResult:
    """Compare one produced artifact against its expected counterpart."""
    expected = Path(expected)
    actual = Path(actual)
    if not expected.exists():
        raise UnreadableArtifact(f"expected artifact missing: {expected}")
    if not actual.exists():
        return GradeResult(False, f"missing artifact {actual.name}")
    suffix = expected.suffix.lower()
    if suffix == ".shp":
        return _grade_shapefile(expected, actual)
    if suffix == ".csv":
        return _grade_csv(expected, actual)
    if suffix == ".png":
        return _grade_image(expected, actual)
    if expected.read_bytes() == actual.read_bytes():
        return GradeResult(True)
    return GradeResult(False, "byte contents differ")
