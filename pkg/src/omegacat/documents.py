"""JSON documents: categories, functors and polygraphs tagged by schema."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import FiniteOmegaCat, OmegaFunctor
from .errors import StructuralError
from .polygraph import Polygraph

Document = Union[FiniteOmegaCat, OmegaFunctor, Polygraph]

SCHEMAS = {
    "category.v1": FiniteOmegaCat.from_json,
    "functor.v1": OmegaFunctor.from_json,
    "polygraph.v1": Polygraph.from_json,
}


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise StructuralError(f"{path}: not JSON ({e.msg} at line {e.lineno})") from e


def from_data(data: Any, expect: str | None = None) -> Document:
    if not isinstance(data, dict):
        raise StructuralError("/: expected a JSON object")
    schema = data.get("schema")
    if schema not in SCHEMAS:
        raise StructuralError(f"/schema: unknown schema {schema!r}")
    if expect is not None and schema != expect:
        raise StructuralError(f"/schema: expected {expect!r}, got {schema!r}")
    try:
        return SCHEMAS[schema](data)
    except (KeyError, TypeError, ValueError) as e:
        raise StructuralError(f"/: malformed {schema} document ({e!r})") from e


def load(path: str | Path, expect: str | None = None) -> Document:
    return from_data(read_json(path), expect)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, UTF-8, stable indentation."""
    if hasattr(obj, "to_json"):
        obj = obj.to_json()
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)
