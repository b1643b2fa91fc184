"""Command-line front end: ``aerofilter filter|synth|eval|bench|hist``."""

from .main import EXIT_DATA, EXIT_OK, EXIT_USAGE, build_parser, main

__all__: list[str] = ["main", "build_parser", "EXIT_OK", "EXIT_USAGE", "EXIT_DATA"]
