"""
Entry point for the nbarrier command line.

Each subcommand resolves its parameters from ``--config`` or inline flags,
runs one workflow through the ``RunController`` and prints JSON (or CSV,
or SVG for ``plot``) to stdout.  Logs and the one-line summary go to
stderr.  Exit codes: 0 success, 1 domain error or failed check, 2 usage
error.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .controller import RunController, exit_code_for
from .errors import ConfigError, NBarrierError, ParameterError
from .utils.logging_system import set_global_level, setup_log_system

logger = setup_log_system("main")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON parameter document")
    parser.add_argument("--out", help="directory for output files and manifest.json (default: $NBARRIER_OUT)")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format")
    parser.add_argument("--log-level", dest="log_level", help="override LOG_LEVEL")


def _scaled(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("scaled parameters")
    for name in ("a1", "a2", "d", "k", "theta", "alpha", "beta"):
        group.add_argument(f"--{name}", type=float)


def _solver(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("wave solver")
    group.add_argument("--L", type=float, help="half-length of the domain (default 50)")
    group.add_argument("--N", type=int, help="grid intervals, even (default 2000)")
    group.add_argument("--tol", type=float, help="Newton residual tolerance (default 1e-8)")
    group.add_argument("--t-end", dest="t_end", type=float, default=200.0, help="oracle time horizon")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbarrier", description="N-barrier bounds for Lotka-Volterra travelling waves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="N-barrier bounds on alpha u + d beta v")
    _common(p)
    _scaled(p)

    p = sub.add_parser("tangent", help="tangent-line lower bound")
    _common(p)
    _scaled(p)
    p.add_argument("--fallback", action="store_true", help="report the N-barrier bound outside the window")

    p = sub.add_parser("wave", help="compute the travelling wave")
    _common(p)
    _scaled(p)
    _solver(p)
    p.add_argument("--method", choices=("newton", "march"), default="newton")

    p = sub.add_parser("verify", help="check the bounds along a computed wave")
    _common(p)
    _scaled(p)
    _solver(p)
    p.add_argument("--oracle", action="store_true", help="cross-check against the time-marching oracle")

    p = sub.add_parser("nonexist", help="three-species nonexistence criterion")
    _common(p)
    p.add_argument("--require-certified", dest="require_certified", action="store_true")

    p = sub.add_parser("sweep", help="nonexistence criterion along one parameter")
    _common(p)
    p.add_argument("--axis", required=True, help="ThreeSpeciesParams field to vary")
    p.add_argument("--values", required=True, help="comma-separated values")

    p = sub.add_parser("plot", help="phase-plane SVG")
    _common(p)
    _scaled(p)
    _solver(p)
    p.add_argument("--direction", choices=("lower", "upper"), default="lower")
    p.add_argument("--tangent", action="store_true", help="draw the tangent-line barrier")
    p.add_argument("--with-wave", dest="with_wave", action="store_true", help="overlay the computed trajectory")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    if args.log_level:
        set_global_level(args.log_level)
    try:
        return RunController().execute(args, argv)
    except (ParameterError, ConfigError) as e:
        logger.error(f"usage error: {e}")
        return exit_code_for(e)
    except NBarrierError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)
    except Exception as e:
        logger.error(f"unexpected failure: {e}", exc_info=True)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
