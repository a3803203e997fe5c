"""Bundled field configurations used by the tests and the CLI examples."""
from __future__ import annotations

import json
from importlib import resources


def _load(kind: str) -> dict:
    root = resources.files(__name__) / kind
    out = {}
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = json.loads(entry.read_text())
    return out


def field_configs() -> dict:
    """name -> raw field JSON (E, B, expect)."""
    return _load("fields")


def vector_field_configs() -> dict:
    return _load("vector_fields")


def path_of(kind: str, name: str):
    return resources.files(__name__) / kind / f"{name}.json"
