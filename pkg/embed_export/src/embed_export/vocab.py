"""Vocabulary extraction from argument files.

Compilation is delegated to the `argsim` CLI's machine-readable compile
output, so the extracted symbols are exactly the ones the similarity core
will query: polarity-folded predicate names plus rendered top-level terms.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from dataclasses import dataclass


class ExtractionError(ValueError):
    """One entry per failing file."""

    def __init__(self, failures: list[str]):
        super().__init__("; ".join(failures))
        self.failures = failures


@dataclass(frozen=True)
class VocabularyManifest:
    symbols: tuple[str, ...]
    sources: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("empty vocabulary")
        if any(not s for s in self.symbols):
            raise ValueError("vocabulary contains an empty symbol")
        object.__setattr__(self, "symbols", tuple(sorted(set(self.symbols))))

    def to_json(self) -> str:
        return json.dumps(
            {"symbols": list(self.symbols), "sources": list(self.sources)}, indent=2
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "VocabularyManifest":
        data = json.loads(text)
        return cls(tuple(data["symbols"]), tuple(data["sources"]))


def _compiler_command() -> list[str]:
    exe = shutil.which("argsim")
    if exe is not None:
        return [exe]
    return [sys.executable, "-m", "argsim"]


def compile_to_json(path: str) -> dict:
    """Run ``argsim compile --format json`` on one argument file."""
    result = subprocess.run(
        [*_compiler_command(), "compile", str(path), "--format", "json"],
        capture_output=True,
        text=True,
    )
    if result.returncode != 0:
        message = result.stderr.strip() or f"compiler exited with {result.returncode}"
        raise ExtractionError([f"{path}: {message}"])
    return json.loads(result.stdout)


def extract_vocabulary(paths: list[str]) -> VocabularyManifest:
    """Every symbol appearing in any compiled clause of the inputs, once."""
    if not paths:
        raise ExtractionError(["no input files given"])
    symbols: set[str] = set()
    failures: list[str] = []
    for path in paths:
        try:
            payload = compile_to_json(path)
        except ExtractionError as e:
            failures.extend(e.failures)
            continue
        symbols.update(payload["symbols"])
    if failures:
        raise ExtractionError(failures)
    return VocabularyManifest(tuple(sorted(symbols)), tuple(str(p) for p in paths))
