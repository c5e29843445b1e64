"""Session lifecycle for the HTTP service: upload, run, stream, fetch."""

from __future__ import annotations

import io
import os
import secrets
import threading
import time
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from ..agents.session import SessionConfig, run_session
from ..errors import (
    BadArchive,
    NoShapefileFound,
    OversizeUpload,
    SessionBusy,
    UnknownArtifact,
    UnknownSession,
)
from ..io import read_dataset, sibling_paths
from ..model import describe_dataset
from ..tools.workspace import Workspace

DEFAULT_MAX_UPLOAD = 64 * 1024 * 1024


@dataclass
class LayerInfo:
    name: str
    shape_kind: str
    feature_count: int
    fields: list
    summary: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "shape_kind": self.shape_kind,
            "feature_count": self.feature_count,
            "fields": self.fields,
            "summary": self.summary,
        }


class Session:
    def __init__(self, sid: str, sandbox_dir: Path):
        self.id = sid
        self.created_at = time.time()
        self.sandbox_dir = sandbox_dir
        self.status = "idle"  # idle -> running -> finished | failed
        self.layers: list[LayerInfo] = []
        self.events: list[dict] = []
        self.artifacts: list[str] = []
        self.summary: str = ""
        self.cond = threading.Condition()
        self.workspace = Workspace(sandbox_dir)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "layers": [l.to_dict() for l in self.layers],
            "artifacts": list(self.artifacts),
            "summary": self.summary,
        }

    def append_event(self, event: dict) -> None:
        with self.cond:
            self.events.append(event)
            self.cond.notify_all()

    def finish(self, status: str, summary: str, artifacts: list[str]) -> None:
        with self.cond:
            self.status = status
            self.summary = summary
            self.artifacts = artifacts
            self.cond.notify_all()

    def events_since(self, seq: int, timeout: float = 30.0):
        """Yield events with seq greater than the given one, blocking (not
        spinning) while the session may still produce more; returns once the
        log is drained after the session finishes, or on an idle timeout."""
        cursor = seq
        while True:
            with self.cond:
                while len(self.events) <= cursor and self.status in ("idle", "running"):
                    if not self.cond.wait(timeout=timeout):
                        return  # idle timeout: let the client reconnect
                batch = self.events[cursor:]
                cursor = len(self.events)
                finished = self.status in ("finished", "failed")
            for event in batch:
                yield event
            if finished:
                with self.cond:
                    if len(self.events) <= cursor:
                        return


class SessionStore:
    """Thread-safe registry of sessions plus the background run machinery."""

    def __init__(
        self,
        root_dir,
        client_factory: Callable[[], tuple],
        max_upload: Optional[int] = None,
        session_kwargs: Optional[dict] = None,
    ):
        self.root = Path(root_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.client_factory = client_factory
        self.max_upload = max_upload or int(
            os.environ.get("SHAPEGPT_MAX_UPLOAD", DEFAULT_MAX_UPLOAD)
        )
        self.session_kwargs = session_kwargs or {}
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def get(self, sid: str) -> Session:
        with self._lock:
            try:
                return self._sessions[sid]
            except KeyError:
                raise UnknownSession(sid)

    def create_from_zip(self, data: bytes) -> Session:
        if len(data) > self.max_upload:
            raise OversizeUpload(f"upload of {len(data)} bytes exceeds {self.max_upload}")
        sid = secrets.token_hex(12)
        sandbox = self.root / sid
        session = Session(sid, sandbox)
        input_dir = session.workspace.resolve("input")
        input_dir.mkdir(parents=True, exist_ok=True)
        try:
            with zipfile.ZipFile(io.BytesIO(data)) as zf:
                for info in zf.infolist():
                    if info.is_dir():
                        continue
                    name = Path(info.filename).name  # flatten, no traversal
                    if not name or name.startswith("."):
                        continue
                    (input_dir / name).write_bytes(zf.read(info))
        except zipfile.BadZipFile as e:
            raise BadArchive(f"not a readable zip archive: {e}")

        shp_files = sorted(input_dir.glob("*.shp"))
        for shp in shp_files:
            if not sibling_paths(shp)["dbf"].exists():
                continue
            d = read_dataset(shp)
            s = describe_dataset(d)
            session.layers.append(
                LayerInfo(
                    name=shp.stem,
                    shape_kind=s.shape_kind,
                    feature_count=s.feature_count,
                    fields=[list(f) for f in s.fields],
                    summary=s.to_text(limit=512),
                )
            )
        if not session.layers:
            raise NoShapefileFound("archive holds no complete shapefile set (.shp + .dbf)")
        with self._lock:
            self._sessions[sid] = session
        return session

    def submit(self, sid: str, prompt: str) -> Session:
        session = self.get(sid)
        with session.cond:
            if session.status != "idle":
                raise SessionBusy(f"session is {session.status}")
            session.status = "running"
            session.cond.notify_all()
        thread = threading.Thread(
            target=self._run, args=(session, prompt), daemon=True
        )
        thread.start()
        return session

    def _run(self, session: Session, prompt: str) -> None:
        try:
            planner, worker = self.client_factory()
            cfg = SessionConfig(
                planner_client=planner, worker_client=worker, **self.session_kwargs
            )
            outcome = run_session(
                prompt,
                [],
                cfg,
                session.sandbox_dir,
                on_event=session.append_event,
                workspace=session.workspace,
            )
            session.finish(
                "finished" if outcome.success else "failed",
                outcome.summary,
                outcome.artifacts,
            )
        except Exception as e:  # defensive: the service must stay up
            session.append_event({"seq": len(session.events) + 1,
                                  "type": "session_end", "success": False,
                                  "summary": f"internal error: {e!r}"})
            session.finish("failed", f"internal error: {e!r}", [])

    def artifact_bytes(self, sid: str, name: str) -> tuple[bytes, str]:
        """Artifact content by workspace-relative name; shapefiles come back
        as a STORED zip of the whole file set."""
        session = self.get(sid)
        if name not in session.artifacts:
            raise UnknownArtifact(name)
        path = session.workspace.resolve(name)  # raises SandboxViolation on escape
        if not path.exists():
            raise UnknownArtifact(name)
        if path.suffix == ".shp":
            buf = io.BytesIO()
            with zipfile.ZipFile(buf, "w", zipfile.ZIP_STORED) as zf:
                for ext in (".shp", ".shx", ".dbf", ".prj"):
                    side = path.with_suffix(ext)
                    if side.exists():
                        zf.write(side, side.name)
            return buf.getvalue(), "application/zip"
        media = {
            ".png": "image/png",
            ".csv": "text/csv; charset=utf-8",
        }.get(path.suffix, "application/octet-stream")
        return path.read_bytes(), media
