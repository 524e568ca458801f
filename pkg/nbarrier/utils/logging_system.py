"""
Custom logging setup used across nbarrier.

This module configures Python's logging module with sensible defaults.  It
supports colourised output via Rich when available and falls back to a
minimal ANSI coloured formatter otherwise.  The log level and colour
settings are controlled via environment variables.

All handlers write to stderr: stdout is reserved for the JSON and CSV
payloads produced by the command-line front end.
"""
import logging
import os
import sys

# ANSI colour codes used only when Rich is unavailable and stderr is a TTY
_COLOR = {
    "DEBUG": "\033[37m",  # white
    "INFO": "\033[36m",  # cyan
    "WARNING": "\033[33m",  # yellow
    "ERROR": "\033[31m",  # red
    "CRITICAL": "\033[41m",  # red background
    "RESET": "\033[0m",
}

_PLAIN_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s"


class _ColoredFormatter(logging.Formatter):
    """Basic ANSI‑coloured formatter used as a fallback if Rich is not available."""

    def format(self, record: logging.LogRecord) -> str:
        colour = _COLOR.get(record.levelname, "")
        reset = _COLOR["RESET"]
        message = super().format(record)
        return f"{colour}{message}{reset}"


def _resolve_level(level: str | None) -> int:
    level_str = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    return getattr(logging, level_str, logging.INFO)


def setup_log_system(name: str, *, level: str | None = None) -> logging.Logger:
    """
    Create (or return) a configured logger.

    - Honours LOG_LEVEL env var (default INFO) unless a ``level`` is explicitly passed.
    - Uses RichHandler when available and stderr is a TTY (and NO_COLOR is not set).
    - Avoids duplicate handlers if called multiple times for the same logger.
    """
    log_level = _resolve_level(level)

    logger = logging.getLogger(f"nbarrier.{name}" if not name.startswith("nbarrier") else name)
    if logger.handlers:
        logger.setLevel(log_level)
        return logger

    no_colour = os.getenv("NO_COLOR") is not None
    is_tty = sys.stderr.isatty()

    handler: logging.Handler
    if not no_colour and is_tty:
        try:
            from rich.console import Console  # type: ignore
            from rich.logging import RichHandler  # type: ignore

            handler = RichHandler(
                console=Console(stderr=True),
                rich_tracebacks=True,
                show_time=True,
                show_level=True,
                show_path=False,
                markup=False,
            )
            # RichHandler does its own formatting of time/level
            handler.setFormatter(logging.Formatter("%(message)s"))
        except Exception:
            # Fallback to plain StreamHandler with ANSI colours
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(_ColoredFormatter(_PLAIN_FORMAT, datefmt="%H:%M:%S"))
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_PLAIN_FORMAT, datefmt="%H:%M:%S"))

    logger.addHandler(handler)
    logger.setLevel(log_level)
    # caplog listens on the root logger
    logger.propagate = True
    return logger


def set_global_level(level: str) -> None:
    """Apply ``level`` to every logger created through :func:`setup_log_system`."""
    log_level = _resolve_level(level)
    for name, obj in logging.root.manager.loggerDict.items():
        if name.startswith("nbarrier") and isinstance(obj, logging.Logger):
            obj.setLevel(log_level)
