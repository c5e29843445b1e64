"""Shapefile .shp/.shx binary records.

Main header is 100 bytes: file code 9994 big-endian at offset 0, file length
in 16-bit words big-endian at 24, version 1000 little-endian at 28, shape type
little-endian at 32, bbox doubles at 36. Record headers are big-endian
(number, content length in words); record contents are little-endian.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

from .errors import BadMagic, MalformedRecord, UnsupportedShapeKind
from .model import Geometry, MultiPoint, NullShape, Point, PolyLine, Polygon, ShapeKind

FILE_CODE = 9994
VERSION = 1000
HEADER_SIZE = 100

SUPPORTED_CODES = {k.value for k in ShapeKind}


def pack_header(shape_code: int, file_length_words: int, bbox) -> bytes:
    xmin, ymin, xmax, ymax = bbox
    return (
        struct.pack(">i", FILE_CODE)
        + struct.pack(">5i", 0, 0, 0, 0, 0)
        + struct.pack(">i", file_length_words)
        + struct.pack("<ii", VERSION, shape_code)
        + struct.pack("<4d", xmin, ymin, xmax, ymax)
        + struct.pack("<4d", 0.0, 0.0, 0.0, 0.0)
    )


def read_header(f: BinaryIO) -> tuple[int, int, tuple[float, float, float, float]]:
    """Returns (shape_code, file_length_words, bbox)."""
    head = f.read(HEADER_SIZE)
    if len(head) < HEADER_SIZE:
        raise MalformedRecord("main header truncated")
    (code,) = struct.unpack(">i", head[0:4])
    if code != FILE_CODE:
        raise BadMagic(f"file code {code} != {FILE_CODE}")
    (length_words,) = struct.unpack(">i", head[24:28])
    version, shape_code = struct.unpack("<ii", head[28:36])
    if version != VERSION:
        raise MalformedRecord(f"unsupported version {version}")
    if shape_code not in SUPPORTED_CODES:
        raise UnsupportedShapeKind(f"shape type code {shape_code}")
    bbox = struct.unpack("<4d", head[36:68])
    return shape_code, length_words, bbox


def encode_geometry(g: Geometry) -> bytes:
    if isinstance(g, NullShape):
        return struct.pack("<i", ShapeKind.NULL)
    if isinstance(g, Point):
        return struct.pack("<idd", ShapeKind.POINT, g.x, g.y)
    if isinstance(g, MultiPoint):
        xs = [c[0] for c in g.coords]
        ys = [c[1] for c in g.coords]
        out = struct.pack(
            "<i4di", ShapeKind.MULTIPOINT, min(xs), min(ys), max(xs), max(ys), len(g.coords)
        )
        for x, y in g.coords:
            out += struct.pack("<dd", x, y)
        return out
    if isinstance(g, (PolyLine, Polygon)):
        kind = ShapeKind.POLYLINE if isinstance(g, PolyLine) else ShapeKind.POLYGON
        parts = g.parts if isinstance(g, PolyLine) else g.rings
        coords = [c for p in parts for c in p]
        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        out = struct.pack(
            "<i4dii", kind, min(xs), min(ys), max(xs), max(ys), len(parts), len(coords)
        )
        idx = 0
        for p in parts:
            out += struct.pack("<i", idx)
            idx += len(p)
        for x, y in coords:
            out += struct.pack("<dd", x, y)
        return out
    raise UnsupportedShapeKind(f"cannot encode {type(g).__name__}")


def decode_geometry(buf: bytes, declared: int) -> Geometry:
    if len(buf) < 4:
        raise MalformedRecord("record content truncated")
    (code,) = struct.unpack("<i", buf[0:4])
    if code not in SUPPORTED_CODES:
        raise UnsupportedShapeKind(f"shape type code {code}")
    if code != ShapeKind.NULL and code != declared:
        raise MalformedRecord(f"record shape code {code} != file shape code {declared}")
    try:
        if code == ShapeKind.NULL:
            return NullShape()
        if code == ShapeKind.POINT:
            x, y = struct.unpack("<dd", buf[4:20])
            return Point(x, y)
        if code == ShapeKind.MULTIPOINT:
            (n,) = struct.unpack("<i", buf[36:40])
            coords = struct.unpack(f"<{2 * n}d", buf[40 : 40 + 16 * n])
            return MultiPoint(tuple(zip(coords[0::2], coords[1::2])))
        # PolyLine / Polygon
        nparts, npoints = struct.unpack("<ii", buf[36:44])
        part_idx = struct.unpack(f"<{nparts}i", buf[44 : 44 + 4 * nparts])
        coord_off = 44 + 4 * nparts
        flat = struct.unpack(f"<{2 * npoints}d", buf[coord_off : coord_off + 16 * npoints])
        pts = list(zip(flat[0::2], flat[1::2]))
        bounds = list(part_idx) + [npoints]
        parts = tuple(tuple(pts[bounds[i] : bounds[i + 1]]) for i in range(nparts))
        if code == ShapeKind.POLYLINE:
            return PolyLine(parts)
        return Polygon(parts)
    except struct.error:
        raise MalformedRecord("record content truncated")


def read_shp_records(path) -> tuple[int, tuple, list[Geometry]]:
    """Sequential scan of all records. Returns (shape_code, bbox, geometries)."""
    with open(path, "rb") as f:
        shape_code, length_words, bbox = read_header(f)
        geoms: list[Geometry] = []
        expected_num = 0
        while True:
            head = f.read(8)
            if not head:
                break
            if len(head) < 8:
                raise MalformedRecord("record header truncated")
            num, content_words = struct.unpack(">ii", head)
            expected_num += 1
            if num != expected_num:
                raise MalformedRecord(f"record number {num}, expected {expected_num}")
            content = f.read(content_words * 2)
            if len(content) < content_words * 2:
                raise MalformedRecord(f"record {num} content truncated")
            geoms.append(decode_geometry(content, shape_code))
    return shape_code, bbox, geoms


def write_shp_shx(shp_path, shx_path, shape_code: int, bbox, geoms: list[Geometry]) -> None:
    contents = [encode_geometry(g) for g in geoms]
    shp_words = (HEADER_SIZE + sum(8 + len(c) for c in contents)) // 2
    shx_words = (HEADER_SIZE + 8 * len(contents)) // 2
    with open(shp_path, "wb") as shp, open(shx_path, "wb") as shx:
        shp.write(pack_header(shape_code, shp_words, bbox))
        shx.write(pack_header(shape_code, shx_words, bbox))
        offset_words = HEADER_SIZE // 2
        for i, content in enumerate(contents, start=1):
            content_words = len(content) // 2
            shx.write(struct.pack(">ii", offset_words, content_words))
            shp.write(struct.pack(">ii", i, content_words))
            shp.write(content)
            offset_words += 4 + content_words
