"""Type aliases for aerofilter."""

from .arrays import BoolArray, FloatArray, IndexArray
from .json import ConfigDict, JsonObject, JsonPrimitive, JsonValue

__all__: list[str] = [
    "BoolArray",
    "FloatArray",
    "IndexArray",
    "ConfigDict",
    "JsonObject",
    "JsonPrimitive",
    "JsonValue",
]
