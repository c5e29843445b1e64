"""dBASE III (level 5) attribute table reader/writer.

Layout: 32-byte file header (version byte 0x03, record count, header/record
sizes), 32-byte field descriptors terminated by 0x0D, then fixed-width ASCII
records prefixed by a deletion flag (0x20 live, 0x2A deleted), closed by 0x1A.
Text is Latin-1 only; Numeric/Float values are right-justified space-padded.
"""

from __future__ import annotations

import datetime as _dt
import struct
from typing import BinaryIO

from .errors import FieldOverflow, MalformedRecord
from .model import AttrValue, FieldDescriptor, FieldKind, FIELD_KIND_BY_CODE

DELETED_FLAG = 0x2A
LIVE_FLAG = 0x20
VERSION_BYTE = 0x03


def read_header(f: BinaryIO) -> tuple[list[FieldDescriptor], int, int, int]:
    """Parse header and field descriptors.

    Returns (fields, record_count, header_size, record_size).
    """
    head = f.read(32)
    if len(head) < 32:
        raise MalformedRecord("dbf header truncated")
    version = head[0]
    if version & 0x07 != 0x03:
        raise MalformedRecord(f"unsupported dbf version byte 0x{version:02x}")
    record_count = struct.unpack("<I", head[4:8])[0]
    header_size = struct.unpack("<H", head[8:10])[0]
    record_size = struct.unpack("<H", head[10:12])[0]

    fields = []
    while True:
        peek = f.read(1)
        if not peek:
            raise MalformedRecord("dbf field descriptors not terminated")
        if peek[0] == 0x0D:
            break
        desc = peek + f.read(31)
        if len(desc) < 32:
            raise MalformedRecord("dbf field descriptor truncated")
        raw_name = desc[0:11].split(b"\x00", 1)[0]
        name = raw_name.decode("latin-1").strip()
        code = chr(desc[11])
        kind = FIELD_KIND_BY_CODE.get(code)
        if kind is None:
            raise MalformedRecord(f"unsupported dbf field type {code!r}")
        length = desc[16]
        decimals = desc[17]
        fields.append(FieldDescriptor(name, kind, length, decimals))

    expected = 32 + 32 * len(fields) + 1
    if header_size != expected:
        # tolerate padded headers as written by some tools
        f.seek(header_size)
    return fields, record_count, header_size, record_size


def parse_value(field: FieldDescriptor, raw: bytes) -> AttrValue:
    text = raw.decode("latin-1")
    if field.kind is FieldKind.CHARACTER:
        return text.rstrip()
    stripped = text.strip()
    if field.kind in (FieldKind.NUMERIC, FieldKind.FLOAT):
        if not stripped or stripped == "*" * len(stripped):
            return None
        if field.decimal_count == 0 and "." not in stripped and "e" not in stripped.lower():
            try:
                return int(stripped)
            except ValueError:
                raise MalformedRecord(f"bad numeric value {stripped!r} in {field.name}")
        try:
            return float(stripped)
        except ValueError:
            raise MalformedRecord(f"bad numeric value {stripped!r} in {field.name}")
    if field.kind is FieldKind.LOGICAL:
        if stripped in ("T", "t", "Y", "y"):
            return True
        if stripped in ("F", "f", "N", "n"):
            return False
        return None
    if field.kind is FieldKind.DATE:
        if not stripped:
            return None
        try:
            return _dt.date(int(text[0:4]), int(text[4:6]), int(text[6:8]))
        except ValueError:
            raise MalformedRecord(f"bad date value {text!r} in {field.name}")
    raise MalformedRecord(f"unhandled field kind {field.kind}")


def format_value(field: FieldDescriptor, value: AttrValue) -> bytes:
    """Fixed-width encoding; raises FieldOverflow when the value cannot fit."""
    n = field.length
    if value is None:
        return b" " * n
    if field.kind is FieldKind.CHARACTER:
        try:
            raw = str(value).encode("latin-1")
        except UnicodeEncodeError:
            raise FieldOverflow(
                f"value for {field.name} contains characters outside Latin-1"
            )
        if len(raw) > n:
            raise FieldOverflow(f"value {value!r} exceeds {field.name} length {n}")
        return raw.ljust(n)
    if field.kind in (FieldKind.NUMERIC, FieldKind.FLOAT):
        if isinstance(value, bool):
            raise FieldOverflow(f"boolean not valid for numeric field {field.name}")
        if field.decimal_count > 0:
            text = f"{float(value):.{field.decimal_count}f}"
        else:
            text = str(int(round(float(value)))) if not isinstance(value, int) else str(value)
        if len(text) > n:
            raise FieldOverflow(
                f"value {text!r} does not fit {field.name} ({field.kind.value} {n})"
            )
        return text.rjust(n).encode("ascii")
    if field.kind is FieldKind.LOGICAL:
        return b"T" if value else b"F"
    if field.kind is FieldKind.DATE:
        if not isinstance(value, _dt.date):
            raise FieldOverflow(f"value for date field {field.name} must be a date")
        # strftime leaves years < 1000 unpadded; DBF needs exactly YYYYMMDD
        return f"{value.year:04d}{value.month:02d}{value.day:02d}".encode("ascii")
    raise FieldOverflow(f"unhandled field kind {field.kind}")


def roundtrip_value(field: FieldDescriptor, value: AttrValue) -> AttrValue:
    """The value as it survives one write/read through its declared format."""
    return parse_value(field, format_value(field, value))


def read_records(path) -> tuple[list[FieldDescriptor], list[dict | None]]:
    """All records in file order; deleted records yielded as None."""
    with open(path, "rb") as f:
        fields, count, header_size, record_size = read_header(f)
        f.seek(header_size)
        rows: list[dict | None] = []
        for i in range(count):
            rec = f.read(record_size)
            if len(rec) < record_size:
                raise MalformedRecord(f"dbf record {i} truncated")
            if rec[0] == DELETED_FLAG:
                rows.append(None)
                continue
            row: dict[str, AttrValue] = {}
            off = 1
            for fd in fields:
                row[fd.name] = parse_value(fd, rec[off : off + fd.length])
                off += fd.length
            rows.append(row)
    return fields, rows


def write_records(path, fields: list[FieldDescriptor], rows: list[dict]) -> None:
    record_size = 1 + sum(f.length for f in fields)
    header_size = 32 + 32 * len(fields) + 1
    today = _dt.date.today()
    with open(path, "wb") as f:
        f.write(
            struct.pack(
                "<BBBBIHH20x",
                VERSION_BYTE,
                today.year % 100,
                today.month,
                today.day,
                len(rows),
                header_size,
                record_size,
            )
        )
        for fd in fields:
            name = fd.name.encode("ascii").ljust(11, b"\x00")
            f.write(name)
            f.write(fd.kind.code.encode("ascii"))
            f.write(b"\x00" * 4)
            f.write(bytes([fd.length, fd.decimal_count]))
            f.write(b"\x00" * 14)
        f.write(b"\x0d")
        for row in rows:
            f.write(bytes([LIVE_FLAG]))
            for fd in fields:
                f.write(format_value(fd, row.get(fd.name)))
        f.write(b"\x1a")
