"""Registered tool library over datasets and a sandboxed workspace."""

from importlib import resources
from pathlib import Path

from .impl import HANDLERS, apply_defaults, invoke
from .roster import build_registry
from .schema import (
    CATEGORIES,
    EXPECTED_TOOL_COUNT,
    ParamSpec,
    Registry,
    ToolCall,
    ToolResult,
    ToolSpec,
    Verdict,
    export_schemas,
    load_registry,
    validate_call,
    wire_declarations,
)
from .workspace import Workspace

__all__ = [
    "CATEGORIES",
    "EXPECTED_TOOL_COUNT",
    "HANDLERS",
    "ParamSpec",
    "Registry",
    "ToolCall",
    "ToolResult",
    "ToolSpec",
    "Verdict",
    "Workspace",
    "apply_defaults",
    "build_registry",
    "default_registry",
    "export_schemas",
    "invoke",
    "load_registry",
    "schema_data_dir",
    "validate_call",
    "wire_declarations",
]


def schema_data_dir() -> Path:
    """Directory holding the shipped YAML/JSON schema documents."""
    return Path(resources.files(__package__) / "data")


def default_registry() -> Registry:
    """The shipped registry, loaded and cross-validated from the schema docs."""
    return load_registry(schema_data_dir())
