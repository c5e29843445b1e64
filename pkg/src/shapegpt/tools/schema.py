"""Tool schema model: specs, calls, results, registry load/export/validation.

The registry is documented in two on-disk formats (a concise YAML block for
model context injection and a structured JSON document for external systems);
both must parse to the same tool set and are cross-validated at load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from ..errors import DuplicateTool, MissingFile, SchemaMismatch, WrongToolCount

EXPECTED_TOOL_COUNT = 27

CATEGORIES = ("Data Reading", "Processing and Analyzing Data", "Saving Data")

PARAM_KINDS = (
    "text",
    "integer",
    "real",
    "boolean",
    "real-list",
    "text-list",
    "layer-handle",
    "file-path",
    "enum",
)


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str
    required: bool = True
    default: Any = None
    description: str = ""
    values: tuple[str, ...] = ()  # enum only

    def __post_init__(self):
        if self.kind not in PARAM_KINDS:
            raise ValueError(f"unknown param kind {self.kind!r}")
        if self.kind == "enum" and not self.values:
            raise ValueError(f"enum param {self.name!r} needs values")
        if self.required and self.default is not None:
            raise ValueError(f"required param {self.name!r} must not carry a default")

    def accepts(self, value: Any) -> bool:
        kind = self.kind
        if kind == "text":
            return isinstance(value, str)
        if kind == "integer":
            return isinstance(value, int) and not isinstance(value, bool)
        if kind == "real":
            return isinstance(value, (int, float)) and not isinstance(value, bool)
        if kind == "boolean":
            return isinstance(value, bool)
        if kind == "real-list":
            return isinstance(value, (list, tuple)) and all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
            )
        if kind == "text-list":
            return isinstance(value, (list, tuple)) and all(isinstance(v, str) for v in value)
        if kind in ("layer-handle", "file-path"):
            return isinstance(value, str) and bool(value)
        if kind == "enum":
            return isinstance(value, str) and value in self.values
        return False


@dataclass(frozen=True)
class ToolSpec:
    name: str
    category: str
    description: str
    params: tuple[ParamSpec, ...] = ()
    examples: tuple[str, ...] = ()

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")

    def param(self, name: str) -> Optional[ParamSpec]:
        for p in self.params:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class ToolCall:
    name: str
    arguments: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ToolResult:
    status: str  # "ok" | "error"
    message: str
    output_handle: Optional[str] = None
    error_kind: Optional[str] = None

    def __post_init__(self):
        if self.status == "ok" and not self.message:
            raise ValueError("ok results carry a message")
        if self.status == "error" and not self.error_kind:
            raise ValueError("error results carry an error_kind")

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class Verdict:
    kind: str  # valid | unknown_tool | missing_param | type_mismatch | unknown_param
    param: Optional[str] = None

    @property
    def is_valid(self) -> bool:
        return self.kind == "valid"

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}({self.param})"


class Registry:
    def __init__(self, tools: list[ToolSpec]):
        by_name: dict[str, ToolSpec] = {}
        for t in tools:
            if t.name in by_name:
                raise DuplicateTool(t.name)
            by_name[t.name] = t
        self._by_name = by_name

    def __len__(self) -> int:
        return len(self._by_name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def get(self, name: str) -> Optional[ToolSpec]:
        return self._by_name.get(name)

    def tools(self) -> list[ToolSpec]:
        """Deterministic order: category (pipeline order), then name."""
        return sorted(
            self._by_name.values(), key=lambda t: (CATEGORIES.index(t.category), t.name)
        )

    def by_category(self, category: str) -> list[ToolSpec]:
        return [t for t in self.tools() if t.category == category]

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and self.tools() == other.tools()


def validate_call(call: ToolCall, registry: Registry) -> Verdict:
    """Pure, total validation: every call maps to exactly one verdict."""
    spec = registry.get(call.name)
    if spec is None:
        return Verdict("unknown_tool")
    for p in spec.params:
        if p.required and p.name not in call.arguments:
            return Verdict("missing_param", p.name)
    declared = {p.name for p in spec.params}
    for name in call.arguments:
        if name not in declared:
            return Verdict("unknown_param", name)
    for p in spec.params:
        if p.name in call.arguments and not p.accepts(call.arguments[p.name]):
            return Verdict("type_mismatch", p.name)
    return Verdict("valid")


# --- serialization ------------------------------------------------------------


def _param_to_dict(p: ParamSpec) -> dict:
    d: dict[str, Any] = {"name": p.name, "kind": p.kind, "required": p.required}
    if p.default is not None:
        d["default"] = p.default
    if p.description:
        d["description"] = p.description
    if p.kind == "enum":
        d["values"] = list(p.values)
    return d


def _param_from_dict(d: dict) -> ParamSpec:
    return ParamSpec(
        name=d["name"],
        kind=d["kind"],
        required=bool(d.get("required", True)),
        default=d.get("default"),
        description=d.get("description", ""),
        values=tuple(d.get("values", ())),
    )


def _tool_to_dict(t: ToolSpec, include_examples: bool = True) -> dict:
    d: dict[str, Any] = {
        "name": t.name,
        "category": t.category,
        "description": t.description,
        "parameters": [_param_to_dict(p) for p in t.params],
    }
    if include_examples and t.examples:
        d["examples"] = list(t.examples)
    return d


def _tool_from_dict(d: dict) -> ToolSpec:
    return ToolSpec(
        name=d["name"],
        category=d["category"],
        description=d.get("description", ""),
        params=tuple(_param_from_dict(p) for p in d.get("parameters", ())),
        examples=tuple(d.get("examples", ())),
    )


def export_schemas(registry: Registry, style: str, include_examples: bool = True) -> str:
    """Deterministic schema document, yaml-style or json-style."""
    docs = {"tools": [_tool_to_dict(t, include_examples) for t in registry.tools()]}
    if style == "yaml-style":
        return yaml.safe_dump(docs, sort_keys=False, allow_unicode=True, width=100)
    if style == "json-style":
        return json.dumps(docs, indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown export style {style!r}")


def _registry_from_doc(doc: dict, origin: str) -> Registry:
    if not isinstance(doc, dict) or "tools" not in doc:
        raise SchemaMismatch(f"{origin}: missing top-level 'tools' list")
    try:
        return Registry([_tool_from_dict(d) for d in doc["tools"]])
    except DuplicateTool:
        raise
    except Exception as e:
        raise SchemaMismatch(f"{origin}: {e}")


def load_registry(schema_dir, expected_count: int = EXPECTED_TOOL_COUNT) -> Registry:
    """Load and cross-validate the YAML and JSON schema documents."""
    schema_dir = Path(schema_dir)
    yaml_paths = sorted(schema_dir.glob("*.yaml")) + sorted(schema_dir.glob("*.yml"))
    json_paths = sorted(schema_dir.glob("*.json"))
    if not yaml_paths or not json_paths:
        raise MissingFile(f"{schema_dir} must hold one YAML and one JSON schema doc")
    ydoc = yaml.safe_load(yaml_paths[0].read_text(encoding="utf-8"))
    jdoc = json.loads(json_paths[0].read_text(encoding="utf-8"))
    yreg = _registry_from_doc(ydoc, yaml_paths[0].name)
    jreg = _registry_from_doc(jdoc, json_paths[0].name)
    if yreg != jreg:
        ynames = [t.name for t in yreg.tools()]
        jnames = [t.name for t in jreg.tools()]
        raise SchemaMismatch(
            f"YAML and JSON registries disagree (yaml={len(ynames)} tools, json={len(jnames)} tools)"
        )
    if expected_count is not None and len(yreg) != expected_count:
        raise WrongToolCount(f"registry has {len(yreg)} tools, expected {expected_count}")
    return yreg


def wire_declarations(registry: Registry) -> list[dict]:
    """Chat-completions style tool declarations."""
    out = []
    for t in registry.tools():
        properties: dict[str, Any] = {}
        required: list[str] = []
        for p in t.params:
            schema: dict[str, Any]
            if p.kind == "integer":
                schema = {"type": "integer"}
            elif p.kind == "real":
                schema = {"type": "number"}
            elif p.kind == "boolean":
                schema = {"type": "boolean"}
            elif p.kind == "real-list":
                schema = {"type": "array", "items": {"type": "number"}}
            elif p.kind == "text-list":
                schema = {"type": "array", "items": {"type": "string"}}
            elif p.kind == "enum":
                schema = {"type": "string", "enum": list(p.values)}
            else:
                schema = {"type": "string"}
            if p.description:
                schema["description"] = p.description
            properties[p.name] = schema
            if p.required:
                required.append(p.name)
        out.append(
            {
                "name": t.name,
                "description": t.description,
                "parameters": {
                    "type": "object",
                    "properties": properties,
                    "required": required,
                },
            }
        )
    return out
