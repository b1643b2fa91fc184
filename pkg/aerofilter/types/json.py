"""JSON type aliases used by configuration documents and reports."""

from typing import Any, Dict, List, TypeAlias, Union

JsonPrimitive: TypeAlias = Union[str, int, float, bool, None]
"""A JSON scalar."""

JsonValue: TypeAlias = Union[JsonPrimitive, List[Any], Dict[str, Any]]
"""Any JSON value."""

JsonObject: TypeAlias = Dict[str, JsonValue]
"""A JSON object, as produced by ``to_dict()`` methods."""

ConfigDict: TypeAlias = Dict[str, Any]
"""A raw, not yet validated configuration mapping."""

__all__: list[str] = ["JsonPrimitive", "JsonValue", "JsonObject", "ConfigDict"]
