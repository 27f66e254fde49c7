"""JSON serialization helpers shared by the CLI and the acceptance suites."""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel

from src.signs.sign_vector import SignVector


def json_default(obj: Any) -> Any:
    """Serialize sign vectors, sets, fractions and models for JSON dumps."""
    if isinstance(obj, SignVector):
        return obj.to_string()
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=str)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    return str(obj)


def dumps(payload: Any, indent: int | None = 2) -> str:
    return json.dumps(payload, default=json_default, indent=indent, sort_keys=False)


def stringify_keys(table: dict) -> dict:
    """JSON object keys must be strings; tuple keys become 'a,b'."""
    return {",".join(map(str, k)) if isinstance(k, tuple) else str(k): v for k, v in table.items()}
