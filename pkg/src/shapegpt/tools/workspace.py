"""Session workspace: named in-memory layers plus a sandboxed file area."""

from __future__ import annotations

from pathlib import Path

from ..errors import SandboxViolation, UnknownLayer
from ..model import Dataset


class Workspace:
    def __init__(self, sandbox_dir):
        self.sandbox_dir = Path(sandbox_dir).resolve()
        self.sandbox_dir.mkdir(parents=True, exist_ok=True)
        self.layers: dict[str, Dataset] = {}
        self.artifacts: list[str] = []  # workspace-relative paths of written files
        self._auto = 0

    def resolve(self, rel_path: str, for_write: bool = False) -> Path:
        """Map a workspace-relative path, refusing escapes."""
        p = (self.sandbox_dir / rel_path).resolve()
        if not p.is_relative_to(self.sandbox_dir):
            raise SandboxViolation(f"path {rel_path!r} escapes the workspace")
        if for_write:
            p.parent.mkdir(parents=True, exist_ok=True)
        return p

    def layer(self, handle: str) -> Dataset:
        try:
            return self.layers[handle]
        except KeyError:
            raise UnknownLayer(
                f"no layer {handle!r}; known layers: {sorted(self.layers) or 'none'}"
            )

    def put(self, handle, dataset: Dataset) -> str:
        if not handle:
            self._auto += 1
            handle = f"layer_{self._auto}"
        self.layers[handle] = dataset
        return handle

    def record_artifact(self, path: Path) -> str:
        rel = str(path.relative_to(self.sandbox_dir))
        if rel not in self.artifacts:
            self.artifacts.append(rel)
        return rel
