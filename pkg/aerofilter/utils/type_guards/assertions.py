"""
Assertion utilities for type validation.

`assert_type` combines a type guard with raising, so configuration parsing can
validate each key in one line and report the key path on failure.
"""

from typing import Any, Callable, TypeGuard

from aerofilter.exceptions.config import ConfigValueError


def assert_type(value: Any, type_guard: Callable[[Any], TypeGuard[Any]], expected_type_name: str, param_name: str) -> None:
    """
    Assert that a value passes a type guard, raising ConfigValueError if not.

    Parameters
    ----------
    value : Any
        The value to check
    type_guard : Callable[[Any], TypeGuard[Any]]
        The type guard function to use for validation
    expected_type_name : str
        Human-readable name of the expected type for error messages
    param_name : str
        Key path of the parameter, used in the error message

    Raises
    ------
    ConfigValueError
        If value does not pass the type guard

    Examples
    --------
    >>> assert_type(raw["K_nn"], is_int, "integer", "K_nn")
    """
    if not type_guard(value):
        raise ConfigValueError(f"{param_name} must be {expected_type_name}, got {type(value).__name__} ({value!r})")
