"""Utility subpackages for aerofilter: logging and runtime type guards."""

from . import logging, type_guards

__all__: list[str] = ["logging", "type_guards"]
