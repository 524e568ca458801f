"""
Subcommand routing for nbarrier.

This module defines a small registry that maps subcommand names to handler
functions.  Each handler receives the parsed command-line namespace and
returns a :class:`CommandResult` holding the machine-readable payload, an
optional CSV table, files to write and a one-line human summary.

Routing an unregistered name raises :class:`~nbarrier.errors.ConfigError`.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import ConfigError


@dataclass
class CommandResult:
    """What one subcommand produced."""

    payload: Any
    summary: str = ""
    exit_code: int = 0
    # (header, rows) for --format csv
    table: Optional[Tuple[Sequence[str], List[Sequence[Any]]]] = None
    # file name -> text, written into the output directory
    artifacts: Dict[str, str] = field(default_factory=dict)
    # replaces the JSON/CSV rendering on stdout when set
    stdout: Optional[str] = None


CommandHandler = Callable[[argparse.Namespace], CommandResult]


@dataclass
class Command:
    """Represents a subcommand and its handler."""

    name: str
    handler: CommandHandler
    help: str = ""


class CommandRouter:
    """
    Routes a parsed subcommand to its handler.

    Commands are registered by name; registering the same name twice
    replaces the earlier handler.  ``names`` lists them in registration
    order, which is also the order the command line shows them in.
    """

    def __init__(self) -> None:
        self._commands: Dict[str, Command] = {}

    def add(self, name: str, handler: CommandHandler, help: str = "") -> None:
        """
        Register a subcommand.

        Parameters
        ----------
        name:
            The subcommand as typed on the command line.
        handler:
            A callable invoked with the parsed namespace.
        help:
            One-line description.
        """
        self._commands[name] = Command(name, handler, help)

    def names(self) -> List[str]:
        return list(self._commands)

    def get(self, name: str) -> Command:
        try:
            return self._commands[name]
        except KeyError:
            raise ConfigError(f"unknown command {name!r}; expected one of {', '.join(self._commands)}") from None

    def route(self, name: str, args: argparse.Namespace) -> CommandResult:
        return self.get(name).handler(args)
