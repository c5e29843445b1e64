"""Shapefile analysis agent toolkit."""

from .model import (
    Coord,
    Dataset,
    DatasetSummary,
    Feature,
    FieldDescriptor,
    FieldKind,
    Geometry,
    MultiPoint,
    NullShape,
    Point,
    PolyLine,
    Polygon,
    ShapeKind,
    compute_bbox,
    describe_dataset,
)
from .io import read_dataset, write_dataset

__version__ = "0.1.0"

__all__ = [
    "Coord",
    "Dataset",
    "DatasetSummary",
    "Feature",
    "FieldDescriptor",
    "FieldKind",
    "Geometry",
    "MultiPoint",
    "NullShape",
    "Point",
    "PolyLine",
    "Polygon",
    "ShapeKind",
    "compute_bbox",
    "describe_dataset",
    "read_dataset",
    "write_dataset",
    "__version__",
]
