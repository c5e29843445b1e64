"""HTTP surface: sessions, task submission, SSE event streaming, artifacts.

Built on the stdlib threading HTTP server; events stream as server-sent
events with sequence-number resume (query `since` or Last-Event-ID header).
"""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

from ..errors import (
    BadArchive,
    NoShapefileFound,
    OversizeUpload,
    SandboxViolation,
    SessionBusy,
    ShapeGptError,
    UnknownArtifact,
    UnknownSession,
)
from ..tools import default_registry, export_schemas, wire_declarations
from .sessions import SessionStore

_STATUS = {
    "BadArchive": 400,
    "NoShapefileFound": 400,
    "OversizeUpload": 413,
    "SessionBusy": 409,
    "UnknownSession": 404,
    "UnknownArtifact": 404,
    "SandboxViolation": 400,
}


def _parse_multipart(body: bytes, content_type: str) -> Optional[bytes]:
    """First file part of a multipart/form-data body (tolerant parser)."""
    m = re.search(r'boundary="?([^";]+)"?', content_type)
    if not m:
        return None
    boundary = b"--" + m.group(1).encode()
    for part in body.split(boundary):
        if b"filename=" not in part:
            continue
        sep = part.find(b"\r\n\r\n")
        if sep < 0:
            continue
        payload = part[sep + 4 :]
        if payload.endswith(b"\r\n"):
            payload = payload[:-2]
        return payload
    return None


class ServiceHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    store: SessionStore = None  # set by make_server
    registry = None

    # -- plumbing -------------------------------------------------------------

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _json(self, code: int, payload: dict) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _bytes(self, code: int, data: bytes, media: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", media)
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _error(self, exc: ShapeGptError) -> None:
        self._json(_STATUS.get(exc.kind, 500), {"error": exc.kind, "message": str(exc)})

    def _body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length else b""

    # -- routes ---------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type, Last-Event-ID")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_POST(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts == ["sessions"]:
                return self._create_session()
            if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "task":
                return self._submit_task(parts[1])
        except ShapeGptError as e:
            return self._error(e)
        self._json(404, {"error": "NotFound", "message": self.path})

    def do_GET(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts == ["tools"]:
                return self._bytes(
                    200, export_schemas(self.registry, "json-style").encode(), "application/json"
                )
            if parts == ["tools", "wire"]:
                return self._json(200, {"tools": wire_declarations(self.registry)})
            if len(parts) == 2 and parts[0] == "sessions":
                return self._json(200, self.store.get(parts[1]).to_dict())
            if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "events":
                return self._stream_events(parts[1], url)
            if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "artifacts":
                session = self.store.get(parts[1])
                return self._json(200, {"artifacts": list(session.artifacts)})
            if len(parts) >= 4 and parts[0] == "sessions" and parts[2] == "artifacts":
                name = "/".join(parts[3:])
                data, media = self.store.artifact_bytes(parts[1], name)
                return self._bytes(200, data, media)
        except ShapeGptError as e:
            return self._error(e)
        self._json(404, {"error": "NotFound", "message": self.path})

    # -- handlers ---------------------------------------------------------------

    def _create_session(self):
        body = self._body()
        ctype = self.headers.get("Content-Type", "")
        if ctype.startswith("multipart/"):
            payload = _parse_multipart(body, ctype)
            if payload is None:
                raise BadArchive("multipart body holds no file part")
        else:
            payload = body
        session = self.store.create_from_zip(payload)
        self._json(201, session.to_dict())

    def _submit_task(self, sid: str):
        try:
            payload = json.loads(self._body() or b"{}")
        except json.JSONDecodeError:
            return self._json(400, {"error": "BadRequest", "message": "body must be JSON"})
        prompt = (payload.get("prompt") or "").strip()
        if not prompt:
            return self._json(400, {"error": "BadRequest", "message": "missing prompt"})
        session = self.store.submit(sid, prompt)
        self._json(202, {"id": session.id, "status": session.status})

    def _stream_events(self, sid: str, url):
        session = self.store.get(sid)
        qs = parse_qs(url.query)
        try:
            if "since" in qs:
                since = int(qs["since"][0])
            elif self.headers.get("Last-Event-ID"):
                since = int(self.headers["Last-Event-ID"])
            else:
                since = 0
        except ValueError:
            return self._json(400, {"error": "BadRequest", "message": "since must be an integer"})
        self.send_response(200)
        self.send_header("Content-Type", "text/event-stream")
        self.send_header("Cache-Control", "no-cache")
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        try:
            for event in session.events_since(since):
                data = json.dumps(event, sort_keys=True)
                frame = f"id: {event['seq']}\ndata: {data}\n\n"
                self.wfile.write(frame.encode("utf-8"))
                self.wfile.flush()
            self.wfile.write(b"event: end\ndata: {}\n\n")
            self.wfile.flush()
        except (BrokenPipeError, ConnectionResetError):
            pass
        # one stream per connection
        self.close_connection = True


def make_server(
    root_dir,
    client_factory,
    port: int = 0,
    max_upload: Optional[int] = None,
    session_kwargs: Optional[dict] = None,
) -> ThreadingHTTPServer:
    """Configured HTTP server bound to 127.0.0.1:port (0 = ephemeral)."""
    registry = default_registry()
    store = SessionStore(root_dir, client_factory, max_upload, session_kwargs)
    handler = type(
        "BoundServiceHandler", (ServiceHandler,), {"store": store, "registry": registry}
    )
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.store = store  # reachable for tests
    return server


def serve_forever(server: ThreadingHTTPServer) -> None:
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
