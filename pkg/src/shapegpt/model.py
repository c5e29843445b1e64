"""In-memory vector data model: geometries, attribute schema, datasets.

Geometries are immutable tagged variants over 2-D coordinates. A Dataset pairs
one geometry per attribute row under a fixed field schema, mirroring what one
shapefile triplet (.shp/.shx/.dbf) holds.
"""

from __future__ import annotations

import datetime as _dt
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Iterator, Optional, Union

from .errors import EmptyInput, InvalidGeometry, WrongGeometryKind

Coord = tuple[float, float]
AttrValue = Union[str, int, float, bool, _dt.date, None]


class ShapeKind(IntEnum):
    NULL = 0
    POINT = 1
    POLYLINE = 3
    POLYGON = 5
    MULTIPOINT = 8

    @property
    def label(self) -> str:
        return _KIND_LABELS[self]


_KIND_LABELS = {
    ShapeKind.NULL: "Null",
    ShapeKind.POINT: "Point",
    ShapeKind.POLYLINE: "PolyLine",
    ShapeKind.POLYGON: "Polygon",
    ShapeKind.MULTIPOINT: "MultiPoint",
}


def _clean_coord(c) -> Coord:
    x, y = float(c[0]), float(c[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidGeometry(f"non-finite coordinate ({x}, {y})")
    return (x, y)


def _clean_part(part) -> tuple[Coord, ...]:
    return tuple(_clean_coord(c) for c in part)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        x, y = _clean_coord((self.x, self.y))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def coord(self) -> Coord:
        return (self.x, self.y)


@dataclass(frozen=True)
class MultiPoint:
    coords: tuple[Coord, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _clean_part(self.coords))


@dataclass(frozen=True)
class PolyLine:
    parts: tuple[tuple[Coord, ...], ...]

    def __post_init__(self):
        parts = tuple(_clean_part(p) for p in self.parts)
        for p in parts:
            if len(p) < 2:
                raise InvalidGeometry("polyline part needs at least 2 coords")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class Polygon:
    """One or more rings; outer rings wind clockwise, holes counter-clockwise.

    An empty rings tuple represents the empty region (e.g. an empty overlay
    result).
    """

    rings: tuple[tuple[Coord, ...], ...]

    def __post_init__(self):
        rings = tuple(_clean_part(r) for r in self.rings)
        for r in rings:
            if len(r) < 4:
                raise InvalidGeometry("polygon ring needs at least 4 coords")
            if r[0] != r[-1]:
                raise InvalidGeometry("polygon ring must be closed (first == last)")
        object.__setattr__(self, "rings", rings)

    @property
    def is_empty(self) -> bool:
        return not self.rings


@dataclass(frozen=True)
class NullShape:
    pass


Geometry = Union[Point, MultiPoint, PolyLine, Polygon, NullShape]

_GEOMETRY_KIND = {
    Point: ShapeKind.POINT,
    MultiPoint: ShapeKind.MULTIPOINT,
    PolyLine: ShapeKind.POLYLINE,
    Polygon: ShapeKind.POLYGON,
    NullShape: ShapeKind.NULL,
}


def geometry_kind(g: Geometry) -> ShapeKind:
    try:
        return _GEOMETRY_KIND[type(g)]
    except KeyError:
        raise WrongGeometryKind(f"not a geometry: {type(g).__name__}")


def geometry_coords(g: Geometry) -> Iterator[Coord]:
    """All coordinates of a geometry in storage order."""
    if isinstance(g, Point):
        yield g.coord
    elif isinstance(g, MultiPoint):
        yield from g.coords
    elif isinstance(g, PolyLine):
        for part in g.parts:
            yield from part
    elif isinstance(g, Polygon):
        for ring in g.rings:
            yield from ring
    elif isinstance(g, NullShape):
        return
    else:
        raise WrongGeometryKind(f"not a geometry: {type(g).__name__}")


def compute_bbox(geoms: Iterable[Geometry]) -> tuple[float, float, float, float]:
    """Tight (xmin, ymin, xmax, ymax) envelope over all coordinates."""
    xmin = ymin = math.inf
    xmax = ymax = -math.inf
    seen = False
    for g in geoms:
        for x, y in geometry_coords(g):
            seen = True
            if x < xmin:
                xmin = x
            if x > xmax:
                xmax = x
            if y < ymin:
                ymin = y
            if y > ymax:
                ymax = y
    if not seen:
        raise EmptyInput("no coordinates to compute a bbox over")
    return (xmin, ymin, xmax, ymax)


class FieldKind(str, Enum):
    CHARACTER = "Character"
    NUMERIC = "Numeric"
    FLOAT = "Float"
    LOGICAL = "Logical"
    DATE = "Date"

    @property
    def code(self) -> str:
        return _FIELD_CODES[self]


_FIELD_CODES = {
    FieldKind.CHARACTER: "C",
    FieldKind.NUMERIC: "N",
    FieldKind.FLOAT: "F",
    FieldKind.LOGICAL: "L",
    FieldKind.DATE: "D",
}
FIELD_KIND_BY_CODE = {v: k for k, v in _FIELD_CODES.items()}


@dataclass(frozen=True)
class FieldDescriptor:
    name: str
    kind: FieldKind
    length: int
    decimal_count: int = 0

    def __post_init__(self):
        if not self.name:
            raise ValueError("field name must be non-empty")
        if len(self.name.encode("ascii", "strict")) > 10:
            raise ValueError(f"field name {self.name!r} exceeds 10 bytes")
        if self.kind is FieldKind.LOGICAL and self.length != 1:
            raise ValueError("Logical fields have length 1")
        if self.kind is FieldKind.DATE and self.length != 8:
            raise ValueError("Date fields have length 8")
        if self.length < 1 or self.length > 254:
            raise ValueError(f"field length {self.length} out of range")
        if self.decimal_count < 0 or self.decimal_count > self.length:
            raise ValueError("decimal_count must be within byte length")


@dataclass(frozen=True)
class Feature:
    geometry: Geometry
    attributes: dict[str, AttrValue]


@dataclass(frozen=True)
class Dataset:
    shape_kind: ShapeKind
    features: tuple[Feature, ...]
    fields: tuple[FieldDescriptor, ...]
    crs_wkt: Optional[str] = None
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(self, "fields", tuple(self.fields))
        names = [f.name for f in self.fields]
        if len(set(names)) != len(names):
            raise ValueError("duplicate field names")
        for feat in self.features:
            kind = geometry_kind(feat.geometry)
            if kind not in (self.shape_kind, ShapeKind.NULL):
                raise ValueError(
                    f"feature geometry {kind.label} does not match dataset kind "
                    f"{self.shape_kind.label}"
                )
            if set(feat.attributes) != set(names):
                raise ValueError("attribute row keys do not match field schema")

    @classmethod
    def build(
        cls,
        shape_kind: ShapeKind,
        features: Iterable[Feature],
        fields: Iterable[FieldDescriptor],
        crs_wkt: Optional[str] = None,
        bbox: Optional[tuple[float, float, float, float]] = None,
    ) -> "Dataset":
        """Construct with the bbox derived from the features (tight envelope).

        An explicit bbox is only honored when there are no coordinates to
        measure (empty or all-null datasets).
        """
        feats = tuple(features)
        try:
            box = compute_bbox(f.geometry for f in feats)
        except EmptyInput:
            box = bbox if bbox is not None else (0.0, 0.0, 0.0, 0.0)
        return cls(shape_kind, feats, tuple(fields), crs_wkt, box)

    def replace_features(self, features: Iterable[Feature]) -> "Dataset":
        return Dataset.build(self.shape_kind, features, self.fields, self.crs_wkt)

    def field(self, name: str) -> FieldDescriptor:
        for f in self.fields:
            if f.name == name:
                return f
        raise KeyError(name)


@dataclass(frozen=True)
class DatasetSummary:
    shape_kind: str
    feature_count: int
    fields: tuple[tuple[str, str, int], ...]
    bbox: tuple[float, float, float, float]
    has_crs: bool
    sample_rows: tuple[tuple[AttrValue, ...], ...]

    def to_text(self, limit: int = 2048) -> str:
        """Compact block for agent context injection; rows truncated first."""
        head = [
            f"geometry: {self.shape_kind}",
            f"features: {self.feature_count}",
            "fields: " + (", ".join(f"{n} ({k} {l})" for n, k, l in self.fields) or "(none)"),
            "bbox: ({:.6g}, {:.6g}, {:.6g}, {:.6g})".format(*self.bbox),
            f"crs: {'yes' if self.has_crs else 'no'}",
        ]
        rows = [" | ".join(_fmt_value(v) for v in row) for row in self.sample_rows]
        while rows and len("\n".join(head + ["sample rows:"] + rows)) > limit:
            rows.pop()
        text = "\n".join(head + (["sample rows:"] + rows if rows else []))
        if len(text) > limit:
            text = text[: limit - 3] + "..."
        return text


def _fmt_value(v: AttrValue) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "T" if v else "F"
    if isinstance(v, _dt.date):
        return v.strftime("%Y%m%d")
    return str(v)


def describe_dataset(d: Dataset, sample_rows: int = 5) -> DatasetSummary:
    fields = tuple((f.name, f.kind.value, f.length) for f in d.fields)
    rows = tuple(
        tuple(feat.attributes[f.name] for f in d.fields)
        for feat in d.features[:sample_rows]
    )
    return DatasetSummary(
        shape_kind=d.shape_kind.label,
        feature_count=len(d.features),
        fields=fields,
        bbox=d.bbox,
        has_crs=d.crs_wkt is not None,
        sample_rows=rows,
    )
