"""Dataset-level shapefile reading and writing (.shp + .shx + .dbf + .prj)."""

from __future__ import annotations

import os
from pathlib import Path

from . import dbf, shp
from .errors import CountMismatch, IoFailure, MissingFile
from .model import (
    Dataset,
    Feature,
    NullShape,
    ShapeKind,
    compute_bbox,
    describe_dataset,
)

__all__ = ["read_dataset", "write_dataset", "describe_dataset", "compute_bbox", "sibling_paths"]


def sibling_paths(shp_path) -> dict[str, Path]:
    base = Path(shp_path)
    stem = base.with_suffix("")
    return {
        "shp": stem.with_suffix(".shp"),
        "shx": stem.with_suffix(".shx"),
        "dbf": stem.with_suffix(".dbf"),
        "prj": stem.with_suffix(".prj"),
    }


def read_dataset(shp_path) -> Dataset:
    """Read one shapefile set into a Dataset.

    The .shx index is ignored (records are scanned sequentially); .prj is
    optional. Deleted DBF records (flag 0x2A) are skipped together with their
    paired geometry.
    """
    paths = sibling_paths(shp_path)
    if not paths["shp"].exists():
        raise MissingFile(str(paths["shp"]))
    if not paths["dbf"].exists():
        raise MissingFile(str(paths["dbf"]))

    shape_code, header_bbox, geoms = shp.read_shp_records(paths["shp"])
    fields, rows = dbf.read_records(paths["dbf"])
    live_rows = [r for r in rows if r is not None]

    if len(geoms) == len(rows):
        pairs = [(g, r) for g, r in zip(geoms, rows) if r is not None]
    elif len(geoms) == len(live_rows):
        pairs = list(zip(geoms, live_rows))
    else:
        raise CountMismatch(
            f".shp has {len(geoms)} records, .dbf has {len(live_rows)} live rows"
        )

    crs_wkt = None
    if paths["prj"].exists():
        crs_wkt = paths["prj"].read_text(encoding="utf-8").strip() or None

    features = tuple(Feature(g, dict(r)) for g, r in pairs)
    kind = ShapeKind(shape_code)
    if kind is ShapeKind.NULL and features:
        # all-null typed file: keep declared kind
        kind = ShapeKind.NULL
    try:
        bbox = compute_bbox(f.geometry for f in features)
    except Exception:
        bbox = tuple(header_bbox)
    return Dataset(kind, features, tuple(fields), crs_wkt, bbox)


def write_dataset(d: Dataset, shp_path) -> list[Path]:
    """Write the full file set; returns the paths written.

    .prj is emitted only when the dataset carries CRS text.
    """
    paths = sibling_paths(shp_path)
    os.makedirs(paths["shp"].parent or Path("."), exist_ok=True)
    geoms = [f.geometry for f in d.features]
    non_null = [g for g in geoms if not isinstance(g, NullShape)]
    bbox = compute_bbox(non_null) if non_null else d.bbox
    try:
        shp.write_shp_shx(paths["shp"], paths["shx"], int(d.shape_kind), bbox, geoms)
        dbf.write_records(paths["dbf"], list(d.fields), [f.attributes for f in d.features])
    except OSError as e:
        raise IoFailure(str(e))
    written = [paths["shp"], paths["shx"], paths["dbf"]]
    if d.crs_wkt:
        try:
            paths["prj"].write_text(d.crs_wkt + "\n", encoding="utf-8")
        except OSError as e:
            raise IoFailure(str(e))
        written.append(paths["prj"])
    return written
