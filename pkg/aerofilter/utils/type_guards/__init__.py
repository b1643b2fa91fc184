"""Runtime type guards used when parsing configuration documents."""

from .assertions import assert_type
from .basic import is_bool, is_int, is_mapping, is_number, is_number_pair, is_str

__all__: list[str] = [
    "assert_type",
    "is_bool",
    "is_int",
    "is_mapping",
    "is_number",
    "is_number_pair",
    "is_str",
]
