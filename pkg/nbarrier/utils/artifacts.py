"""
Artifact helpers: byte-stable JSON/CSV writers, hashing and the run manifest.

Floats are always written in Python's shortest round-trip representation
(``repr``), so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence

import numpy as np


def format_float(value: float) -> str:
    """Shortest round-trip decimal for ``value``."""
    return repr(float(value))


def _json_default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serialisable")


def dumps_json(payload: Any) -> str:
    """Serialise ``payload`` with fixed indentation and key order preserved."""
    return json.dumps(payload, indent=2, default=_json_default, allow_nan=False) + "\n"


def sha256_hex(*chunks: bytes | str) -> str:
    digest = hashlib.sha256()
    for chunk in chunks:
        digest.update(chunk.encode("utf-8") if isinstance(chunk, str) else chunk)
    return digest.hexdigest()


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV, formatting floats with :func:`format_float`."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, (float, np.floating, Fraction)) else v for v in row]
        )
    return buffer.getvalue()


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps "\n" on every platform
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


@dataclass
class RunManifest:
    """Provenance record written next to every set of run outputs."""

    tool_version: str
    command: str
    input_hash: str
    argv: List[str]
    started_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    finished_at: Optional[str] = None
    exit_code: Optional[int] = None
    outputs: List[str] = field(default_factory=list)

    def record(self, path: Path) -> None:
        name = path.name
        if name not in self.outputs:
            self.outputs.append(name)

    def finish(self, exit_code: int) -> None:
        self.exit_code = exit_code
        self.finished_at = datetime.now(timezone.utc).isoformat()

    def to_dict(self) -> dict:
        return asdict(self)
