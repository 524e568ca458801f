"""Utility functions for nbarrier.

The ``logging_system`` module provides a configurable logging setup that
honours environment variables and falls back to simple coloured output when
Rich is unavailable.  ``artifacts`` holds the helpers that write JSON, CSV
and run manifests with byte-stable formatting.
"""

from .logging_system import setup_log_system, set_global_level  # noqa: F401
from .artifacts import (  # noqa: F401
    RunManifest,
    csv_text,
    dumps_json,
    format_float,
    sha256_hex,
    write_text,
)

__all__ = [
    "setup_log_system",
    "set_global_level",
    "RunManifest",
    "csv_text",
    "dumps_json",
    "format_float",
    "sha256_hex",
    "write_text",
]
