"""
Basic type guards for configuration values.

JSON documents and environment variables deliver loosely typed values; these
guards let the config parser narrow them without tripping static checkers.
"""

from typing import Any, Mapping, Sequence, TypeGuard


def is_str(value: Any) -> TypeGuard[str]:
    """
    Runtime type guard to validate string parameters.

    Parameters
    ----------
    value : Any
        The value to check

    Returns
    -------
    TypeGuard[str]
        True if value is a string, False otherwise
    """
    return isinstance(value, str)


def is_bool(value: Any) -> TypeGuard[bool]:
    """
    Runtime type guard to validate boolean parameters.

    Parameters
    ----------
    value : Any
        The value to check

    Returns
    -------
    TypeGuard[bool]
        True if value is a boolean, False otherwise
    """
    return isinstance(value, bool)


def is_int(value: Any) -> TypeGuard[int]:
    """
    Runtime type guard for integers.

    Booleans are rejected even though ``bool`` subclasses ``int``: a JSON
    ``true`` is never a valid neighbour count.

    Parameters
    ----------
    value : Any
        The value to check

    Returns
    -------
    TypeGuard[int]
        True if value is an integer and not a boolean, False otherwise
    """
    return isinstance(value, int) and not isinstance(value, bool)


def is_number(value: Any) -> TypeGuard[int | float]:
    """
    Runtime type guard for real numbers (int or float, never bool).

    Parameters
    ----------
    value : Any
        The value to check

    Returns
    -------
    TypeGuard[int | float]
        True if value is an int or float and not a boolean
    """
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def is_mapping(value: Any) -> TypeGuard[Mapping[str, Any]]:
    """Return True if value is a mapping (a JSON object)."""
    return isinstance(value, Mapping)


def is_number_pair(value: Any) -> TypeGuard[Sequence[int | float]]:
    """Return True if value is a two-element list or tuple of numbers."""
    return isinstance(value, (list, tuple)) and len(value) == 2 and all(is_number(v) for v in value)  # pyright: ignore[reportUnknownArgumentType, reportUnknownVariableType]
