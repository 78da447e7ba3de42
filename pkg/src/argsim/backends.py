"""Pluggable symbol-similarity providers.

Every provider scores pairs of symbol strings (predicate names, constants,
variables, function names) into [0, 1], returns 1 on identical symbols, and
is symmetric.  ``syntax_independent`` tells the audit harness whether scores
can change under a bijective renaming of the vocabulary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


class MissingSymbolError(KeyError):
    def __init__(self, symbol: str):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"symbol {self.symbol!r} is not in the embedding cache"


class SymbolSimilarityProvider:
    """Interface: ``score(t1, t2) -> float`` in [0, 1]."""

    syntax_independent = False

    def score(self, t1: str, t2: str) -> float:
        raise NotImplementedError


class ExactMatchProvider(SymbolSimilarityProvider):
    """1 for byte-equal symbols, 0 otherwise."""

    syntax_independent = True

    def score(self, t1: str, t2: str) -> float:
        return 1.0 if t1 == t2 else 0.0


@dataclass
class LookupTableProvider(SymbolSimilarityProvider):
    """Fixed symmetric score table; absent pairs are dissimilar by stipulation."""

    entries: dict[frozenset[str] | str, float] = field(default_factory=dict)
    default_missing: float = 0.0

    def __post_init__(self):
        for key, value in self.entries.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"score for {set(key)!r} out of [0, 1]: {value}")

    @classmethod
    def from_pairs(cls, pairs) -> "LookupTableProvider":
        entries: dict[frozenset[str] | str, float] = {}
        for a, b, score in pairs:
            entries[frozenset((a, b)) if a != b else a] = float(score)
        return cls(entries)

    @classmethod
    def load(cls, path) -> "LookupTableProvider":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or "pairs" not in data:
            raise ValueError(f"{path}: expected an object with a 'pairs' array")
        return cls.from_pairs(data["pairs"])

    def score(self, t1: str, t2: str) -> float:
        if t1 == t2:
            return 1.0
        return self.entries.get(frozenset((t1, t2)), self.default_missing)


@dataclass
class EmbeddingCacheProvider(SymbolSimilarityProvider):
    """Cosine similarity over precomputed symbol vectors, clamped to [0, 1]."""

    model_tag: str
    vectors: dict[str, tuple[float, ...]]

    def __post_init__(self):
        dims = {len(v) for v in self.vectors.values()}
        if len(dims) > 1:
            raise ValueError(f"inconsistent vector dimensions: {sorted(dims)}")
        for sym, v in self.vectors.items():
            if not any(v):
                raise ValueError(f"zero vector for symbol {sym!r}")

    @classmethod
    def load(cls, path) -> "EmbeddingCacheProvider":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            return cls(data["model"], {k: tuple(v) for k, v in data["vectors"].items()})
        except KeyError as e:
            raise ValueError(f"{path}: missing field {e}") from e

    def score(self, t1: str, t2: str) -> float:
        if t1 not in self.vectors:
            raise MissingSymbolError(t1)
        if t2 not in self.vectors:
            raise MissingSymbolError(t2)
        if t1 == t2:
            return 1.0
        v1 = self.vectors[t1]
        v2 = self.vectors[t2]
        cos = sum(a * b for a, b in zip(v1, v2)) / (
            math.sqrt(sum(a * a for a in v1)) * math.sqrt(sum(b * b for b in v2))
        )
        return min(1.0, max(0.0, cos))


def load_backend(spec: str) -> SymbolSimilarityProvider:
    """Build a provider from a CLI spec: ``eq``, ``lookup:PATH``, ``embedding:PATH``."""
    if spec == "eq":
        return ExactMatchProvider()
    kind, sep, path = spec.partition(":")
    if not sep or not path:
        raise ValueError(f"backend spec {spec!r} is not 'eq', 'lookup:PATH' or 'embedding:PATH'")
    if kind == "lookup":
        return LookupTableProvider.load(path)
    if kind == "embedding":
        return EmbeddingCacheProvider.load(path)
    raise ValueError(f"unknown backend kind {kind!r}")
