"""
Central controller for nbarrier runs.

``RunController`` loads ``.env``, resolves parameters from a JSON document or
inline flags, dispatches the subcommand through the ``CommandRouter`` and
writes the payload to stdout.  When an output directory is configured
(``--out`` or ``NBARRIER_OUT``) every file the run produced is written
there together with a ``manifest.json`` listing them.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, TextIO, Tuple

from dotenv import load_dotenv
from rich.console import Console

from . import __version__
from .barrier import (
    Weights,
    bounds_scaled,
    bounds_sum_unscaled,
    bounds_unscaled,
    hyperbola_check,
    lower_barrier_scaled,
    upper_barrier_scaled,
)
from .commands import CommandResult, CommandRouter
from .errors import ConfigError, ParameterError
from .model import ScaledParams, ThreeSpeciesParams, classify, scale
from .model.config_io import detect_kind, load_document, parse_scaled, parse_three_species, parse_unscaled, parse_weights
from .nonexist import CSV_HEADER, check, sweep
from .plot import render_svg
from .tangent import tangent_bounds, fallback_lower, solve_tangent
from .utils.artifacts import RunManifest, csv_text, dumps_json, sha256_hex, write_text
from .utils.logging_system import setup_log_system
from .waves import SolverConfig, bound_verify, march_oracle, max_norm_distance, solve_wave

logger = setup_log_system("controller")

INLINE_PARAMS = ("a1", "a2", "d", "k", "theta")
INLINE_WEIGHTS = ("alpha", "beta")


def exit_code_for(exc: BaseException) -> int:
    """2 for usage errors, 1 for everything else."""
    if isinstance(exc, (ParameterError, ConfigError)):
        return 2
    return 1


class RunController:
    """Runs one subcommand and owns its outputs."""

    def __init__(self, out_dir: Optional[str | Path] = None, stdout: Optional[TextIO] = None) -> None:
        # Load environment variables from .env if present
        load_dotenv()

        env_out = os.getenv("NBARRIER_OUT") or None
        chosen = out_dir or env_out
        self.out_dir: Optional[Path] = Path(chosen) if chosen else None
        self.stdout = stdout or sys.stdout
        self.console = Console(stderr=True, no_color=os.getenv("NO_COLOR") is not None)

        self._doc: Optional[Dict[str, Any]] = None

        self.router = CommandRouter()
        self._register_default_commands()

    # ------------------------------------------------------------------
    # Run lifecycle
    # ------------------------------------------------------------------
    def execute(self, args: argparse.Namespace, argv: Sequence[str]) -> int:
        """Run ``args.command``; exceptions propagate after the manifest is written."""
        out_dir = Path(args.out) if getattr(args, "out", None) else self.out_dir
        raw = b""
        self._doc = None
        if getattr(args, "config", None):
            self._doc, raw = load_document(args.config)
        manifest = RunManifest(
            tool_version=__version__,
            command=args.command,
            input_hash=sha256_hex(raw, "\0".join(argv)),
            argv=list(argv),
        )
        exit_code = 1
        try:
            result = self.router.route(args.command, args)
            self._emit(result, args)
            if out_dir is not None:
                self._write_outputs(out_dir, args.command, result, manifest)
            exit_code = result.exit_code
            return exit_code
        except Exception as e:
            exit_code = exit_code_for(e)
            raise
        finally:
            if out_dir is not None:
                manifest.finish(exit_code)
                write_text(out_dir / "manifest.json", dumps_json(manifest.to_dict()))

    def _emit(self, result: CommandResult, args: argparse.Namespace) -> None:
        if result.stdout is not None:
            text = result.stdout
        elif getattr(args, "format", "json") == "csv" and result.table is not None:
            header, rows = result.table
            text = csv_text(header, rows)
        else:
            text = dumps_json(result.payload)
        self.stdout.write(text)
        self.stdout.flush()
        if result.summary:
            self.console.print(result.summary, markup=False, highlight=False)

    def _write_outputs(self, out_dir: Path, command: str, result: CommandResult, manifest: RunManifest) -> None:
        files: Dict[str, str] = {f"{command}.json": dumps_json(result.payload)}
        if result.table is not None:
            header, rows = result.table
            files[f"{command}.csv"] = csv_text(header, rows)
        # artifacts win over the default renderings of the same name
        files.update(result.artifacts)
        for name, text in files.items():
            path = write_text(out_dir / name, text)
            manifest.record(path)
            logger.debug(f"wrote {path}")
        logger.info(f"{len(files)} file(s) written to {out_dir}")

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------
    def _inline(self, args: argparse.Namespace, names: Sequence[str]) -> Dict[str, float]:
        return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}

    def _document_kind(self, args: argparse.Namespace) -> Optional[str]:
        if self._doc is None:
            return None
        if self._inline(args, INLINE_PARAMS + INLINE_WEIGHTS):
            raise ConfigError("give either --config or inline parameters, not both")
        return detect_kind(self._doc)

    def _scaled_inputs(self, args: argparse.Namespace) -> Tuple[ScaledParams, Weights]:
        kind = self._document_kind(args)
        if kind is not None:
            if kind != "scaled":
                raise ConfigError(f"{args.command} needs scaled parameters (a1, a2, d), got a {kind} document")
            p = parse_scaled(self._doc)
            weights = parse_weights(self._doc)
        else:
            values = self._inline(args, INLINE_PARAMS)
            missing = [n for n in ("a1", "a2", "d") if n not in values]
            if missing:
                raise ConfigError("missing parameters: " + ", ".join(f"--{n}" for n in missing))
            p = ScaledParams(**values)
            given = self._inline(args, INLINE_WEIGHTS)
            if len(given) == 1:
                raise ConfigError("--alpha and --beta must be given together")
            weights = (given["alpha"], given["beta"]) if given else None
        return p, Weights(*(weights or (1.0, 1.0)))

    def _three_species(self, args: argparse.Namespace) -> ThreeSpeciesParams:
        kind = self._document_kind(args)
        if kind != "three_species":
            raise ConfigError(f"{args.command} needs --config with a three-species document")
        return parse_three_species(self._doc)

    def _solver_config(self, args: argparse.Namespace) -> SolverConfig:
        overrides = {n: getattr(args, n) for n in ("L", "N", "tol") if getattr(args, n, None) is not None}
        return SolverConfig(**overrides)

    # ------------------------------------------------------------------
    # Command processing
    # ------------------------------------------------------------------
    def _register_default_commands(self) -> None:
        self.router.add("bounds", self._bounds, "N-barrier bounds on alpha u + d beta v")
        self.router.add("tangent", self._tangent, "tangent-line lower bound")
        self.router.add("wave", self._wave, "compute the travelling wave")
        self.router.add("verify", self._verify, "check the bounds along a computed wave")
        self.router.add("nonexist", self._nonexist, "three-species nonexistence criterion")
        self.router.add("sweep", self._sweep, "nonexistence criterion along one parameter")
        self.router.add("plot", self._plot, "phase-plane SVG")

    def _bounds(self, args: argparse.Namespace) -> CommandResult:
        if self._document_kind(args) == "unscaled":
            raw = parse_unscaled(self._doc)
            w = Weights(*(parse_weights(self._doc) or (1.0, 1.0)))
            pair = bounds_unscaled(raw, w)
            sums = bounds_sum_unscaled(raw)
            scaled, _ = scale(raw)
            payload = {
                "system": "unscaled",
                "params": raw.to_dict(),
                "weights": {"alpha": float(w.alpha), "beta": float(w.beta)},
                "lower": float(pair.lower),
                "upper": float(pair.upper),
                "bounds": pair.to_dict(),
                "sum_bounds": sums.to_dict(),
                "scaled_params": scaled.to_dict(),
            }
            rows = [(b.quantity, float(b.lower), float(b.upper), b.provenance) for b in (pair, sums)]
        else:
            p, w = self._scaled_inputs(args)
            pair = bounds_scaled(p, w)
            payload = {
                "system": "scaled",
                "params": p.to_dict(),
                "weights": {"alpha": float(w.alpha), "beta": float(w.beta)},
                "regime": classify(p).value,
                "lower": float(pair.lower),
                "upper": float(pair.upper),
                "bounds": pair.to_dict(),
                "barriers": {
                    "lower": lower_barrier_scaled(p, w).to_dict(),
                    "upper": upper_barrier_scaled(p, w).to_dict(),
                },
                "hyperbola_discriminant": float(hyperbola_check(p, w)),
            }
            rows = [(pair.quantity, float(pair.lower), float(pair.upper), pair.provenance)]
        return CommandResult(
            payload,
            summary=f"{payload['bounds']['quantity']}: [{payload['lower']:.6g}, {payload['upper']:.6g}]",
            table=(("quantity", "lower", "upper", "provenance"), rows),
        )

    def _tangent(self, args: argparse.Namespace) -> CommandResult:
        p, w = self._scaled_inputs(args)
        if args.fallback:
            pair, sol = fallback_lower(p, w)
        else:
            sol = solve_tangent(p, w)
            pair = tangent_bounds(p, w)
        payload: Dict[str, Any] = {
            "params": p.to_dict(),
            "weights": {"alpha": float(w.alpha), "beta": float(w.beta)},
            "lambda2": None if sol is None else sol.lambda2,
            "bounds": pair.to_dict(),
            "tangent": None if sol is None else sol.to_dict(),
        }
        row = (pair.quantity, float(pair.lower), float(pair.upper), pair.provenance)
        return CommandResult(
            payload,
            summary=f"lower bound {float(pair.lower):.6g} ({pair.provenance})",
            table=(("quantity", "lower", "upper", "provenance"), [row]),
        )

    def _profile(self, p: ScaledParams, args: argparse.Namespace):
        cfg = self._solver_config(args)
        if getattr(args, "method", "newton") == "march":
            return march_oracle(p, cfg, t_end=args.t_end), cfg
        return solve_wave(p, cfg), cfg

    def _wave(self, args: argparse.Namespace) -> CommandResult:
        p, _ = self._scaled_inputs(args)
        profile, _ = self._profile(p, args)
        payload = {
            "params": p.to_dict(),
            "theta": profile.theta,
            "residual": profile.meta["residual"],
            "meta": profile.meta,
        }
        rows = list(zip(profile.grid.tolist(), profile.u.tolist(), profile.v.tolist()))
        return CommandResult(
            payload,
            summary=f"theta = {profile.theta:.8g}, residual = {profile.meta['residual']:.3e}",
            table=(("x", "u", "v"), rows),
            artifacts={"wave.csv": profile.to_csv_text(), "wave.json": dumps_json(profile.sidecar())},
        )

    def _verify(self, args: argparse.Namespace) -> CommandResult:
        p, w = self._scaled_inputs(args)
        profile, cfg = self._profile(p, args)
        report = bound_verify(profile, p, w, abs_slack=cfg.abs_slack)
        payload: Dict[str, Any] = {
            "params": p.to_dict(),
            "weights": {"alpha": float(w.alpha), "beta": float(w.beta)},
            "theta": profile.theta,
            "report": report.to_dict(),
        }
        if args.oracle:
            oracle = march_oracle(p, cfg, t_end=args.t_end, initial=None)
            payload["oracle"] = {
                "theta": oracle.theta,
                "speed_difference": abs(oracle.theta - profile.theta),
                "max_norm_distance": max_norm_distance(profile, oracle),
            }
        rows = [(c.name, c.kind, c.bound, c.observed, c.margin, c.status) for c in report.checks]
        return CommandResult(
            payload,
            summary=f"verification {'passed' if report.passed else 'FAILED'} (slack {report.slack:.3g})",
            exit_code=0 if report.passed else 1,
            table=(("check", "kind", "bound", "observed", "margin", "status"), rows),
        )

    def _nonexist(self, args: argparse.Namespace) -> CommandResult:
        p = self._three_species(args)
        verdict = check(p)
        payload = {"params": p.to_dict(), **verdict.to_dict()}
        exit_code = 1 if args.require_certified and not verdict.certified else 0
        return CommandResult(
            payload,
            summary=f"verdict: {verdict.verdict.value}",
            exit_code=exit_code,
            table=(CSV_HEADER[1:], [verdict.to_csv_row(0.0)[1:]]),
        )

    def _sweep(self, args: argparse.Namespace) -> CommandResult:
        base = self._three_species(args)
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError as e:
            raise ConfigError(f"--values must be a comma-separated list of numbers: {e}") from e
        verdicts = sweep(base, args.axis, values)
        payload = {
            "axis": args.axis,
            "points": [{"value": v, **verdict.to_dict()} for v, verdict in zip(values, verdicts)],
        }
        certified = sum(1 for v in verdicts if v.certified)
        return CommandResult(
            payload,
            summary=f"{certified}/{len(verdicts)} point(s) certified",
            table=(CSV_HEADER, [verdict.to_csv_row(v) for v, verdict in zip(values, verdicts)]),
        )

    def _plot(self, args: argparse.Namespace) -> CommandResult:
        p, w = self._scaled_inputs(args)
        profile = self._profile(p, args)[0] if args.with_wave else None
        if args.tangent:
            sol = solve_tangent(p, w)
            barrier = sol.as_barrier()
            svg = render_svg(p, tangent=sol, profile=profile)
        else:
            barrier = lower_barrier_scaled(p, w) if args.direction == "lower" else upper_barrier_scaled(p, w)
            svg = render_svg(p, barrier=barrier, profile=profile)
        payload = {
            "params": p.to_dict(),
            "direction": "lower" if args.tangent else args.direction,
            "barrier": barrier.to_dict(),
            "trajectory": profile is not None,
        }
        return CommandResult(payload, summary=f"plot: {barrier.case_tag}", stdout=svg, artifacts={"plot.svg": svg})
