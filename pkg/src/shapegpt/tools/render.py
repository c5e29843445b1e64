"""Minimal PNG map rendering: fixed canvas, auto-fit, one color per layer."""

from __future__ import annotations

import struct
import zlib

from ..model import Dataset, MultiPoint, NullShape, Point, PolyLine, Polygon

CANVAS = 1024
MARGIN = 0.05

PALETTE = [
    (31, 119, 180),
    (214, 39, 40),
    (44, 160, 44),
    (255, 127, 14),
    (148, 103, 189),
    (23, 190, 207),
    (140, 86, 75),
    (227, 119, 194),
]


def write_png(path, width: int, height: int, pixels: bytearray) -> None:
    """RGB8 encoder: IHDR + zlib IDAT (filter 0 per scanline) + IEND."""

    def chunk(tag: bytes, payload: bytes) -> bytes:
        out = struct.pack(">I", len(payload)) + tag + payload
        return out + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)

    raw = bytearray()
    stride = width * 3
    for y in range(height):
        raw.append(0)
        raw.extend(pixels[y * stride : (y + 1) * stride])
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    data = (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", ihdr)
        + chunk(b"IDAT", zlib.compress(bytes(raw), 6))
        + chunk(b"IEND", b"")
    )
    with open(path, "wb") as f:
        f.write(data)


def read_png_size(path) -> tuple[int, int]:
    with open(path, "rb") as f:
        head = f.read(26)
    if head[:8] != b"\x89PNG\r\n\x1a\n" or head[12:16] != b"IHDR":
        raise ValueError("not a PNG file")
    w, h = struct.unpack(">II", head[16:24])
    return w, h


class _Canvas:
    def __init__(self, size: int):
        self.size = size
        self.px = bytearray(b"\xff" * (size * size * 3))

    def set(self, x: int, y: int, color):
        if 0 <= x < self.size and 0 <= y < self.size:
            i = (y * self.size + x) * 3
            self.px[i : i + 3] = bytes(color)

    def line(self, x0, y0, x1, y1, color):
        # Bresenham on rounded endpoints
        x0, y0, x1, y1 = int(round(x0)), int(round(y0)), int(round(x1)), int(round(y1))
        dx, dy = abs(x1 - x0), -abs(y1 - y0)
        sx = 1 if x0 < x1 else -1
        sy = 1 if y0 < y1 else -1
        err = dx + dy
        while True:
            self.set(x0, y0, color)
            if x0 == x1 and y0 == y1:
                return
            e2 = 2 * err
            if e2 >= dy:
                err += dy
                x0 += sx
            if e2 <= dx:
                err += dx
                y0 += sy

    def dot(self, x, y, color, r: int = 2):
        cx, cy = int(round(x)), int(round(y))
        for dx in range(-r, r + 1):
            for dy in range(-r, r + 1):
                if dx * dx + dy * dy <= r * r:
                    self.set(cx + dx, cy + dy, color)

    def fill_rings(self, rings, color):
        """Even-odd scanline fill over pixel-space rings."""
        if not rings:
            return
        ymin = max(0, int(min(p[1] for r in rings for p in r)))
        ymax = min(self.size - 1, int(max(p[1] for r in rings for p in r)) + 1)
        for y in range(ymin, ymax + 1):
            yc = y + 0.5
            xs = []
            for ring in rings:
                n = len(ring)
                x0, y0 = ring[n - 1]
                for i in range(n):
                    x1, y1 = ring[i]
                    if (y0 > yc) != (y1 > yc):
                        xs.append(x0 + (yc - y0) * (x1 - x0) / (y1 - y0))
                    x0, y0 = x1, y1
            xs.sort()
            for xa, xb in zip(xs[0::2], xs[1::2]):
                for x in range(max(0, int(xa + 0.5)), min(self.size, int(xb + 0.5) + 1)):
                    self.set(x, y, color)


def _mix(color, amount=0.55):
    return tuple(int(255 - (255 - c) * amount) for c in color)


def render_layers(datasets: list[Dataset], path) -> None:
    boxes = [d.bbox for d in datasets if d.features]
    if boxes:
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = span * MARGIN
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    scale = CANVAS / span

    def to_px(c):
        return ((c[0] - x0) * scale, CANVAS - (c[1] - y0) * scale)

    canvas = _Canvas(CANVAS)
    for li, d in enumerate(datasets):
        color = PALETTE[li % len(PALETTE)]
        for feat in d.features:
            g = feat.geometry
            if isinstance(g, NullShape):
                continue
            if isinstance(g, Point):
                canvas.dot(*to_px(g.coord), color)
            elif isinstance(g, MultiPoint):
                for c in g.coords:
                    canvas.dot(*to_px(c), color)
            elif isinstance(g, PolyLine):
                for part in g.parts:
                    pts = [to_px(c) for c in part]
                    for a, b in zip(pts, pts[1:]):
                        canvas.line(a[0], a[1], b[0], b[1], color)
            elif isinstance(g, Polygon):
                rings = [[to_px(c) for c in ring] for ring in g.rings]
                canvas.fill_rings(rings, _mix(color))
                for pts in rings:
                    for a, b in zip(pts, pts[1:]):
                        canvas.line(a[0], a[1], b[0], b[1], color)
    write_png(path, CANVAS, CANVAS, canvas.px)
