"""Command routing subsystem for nbarrier.

This package exposes the ``CommandRouter`` class which maps the
command-line subcommands (``bounds``, ``tangent``, ``wave``, ``verify``,
``nonexist``, ``sweep``, ``plot``) to the handlers that run them.
"""

from .command_router import Command, CommandResult, CommandRouter  # noqa: F401

__all__ = ["Command", "CommandResult", "CommandRouter"]
