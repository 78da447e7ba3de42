"""Embedding-cache generation in the format argsim's embedding backend loads.

The encoder is injectable: production use loads a sentence-transformers
model by tag, tests supply a deterministic stand-in.  Output is fully
determined by the vocabulary and the encoder.
"""

from __future__ import annotations

import json
import re
from typing import Callable, Sequence

from .vocab import VocabularyManifest

Encoder = Callable[[Sequence[str]], Sequence[Sequence[float]]]

_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])")


class ModelLoadError(RuntimeError):
    pass


def split_camel_case(symbol: str) -> str:
    """``AtLocation`` -> ``At Location``; symbols without case changes pass through."""
    return _CAMEL_BOUNDARY.sub(" ", symbol)


def load_sbert_encoder(model_tag: str) -> Encoder:
    """Load a sentence-transformers model; needs the weights available locally."""
    try:
        from sentence_transformers import SentenceTransformer
    except ImportError as e:
        raise ModelLoadError(
            "sentence-transformers is not installed; install the 'model' extra"
        ) from e
    try:
        model = SentenceTransformer(model_tag)
    except Exception as e:
        raise ModelLoadError(f"cannot load model {model_tag!r}: {e}") from e

    def encode(texts: Sequence[str]) -> Sequence[Sequence[float]]:
        return [[float(x) for x in row] for row in model.encode(list(texts))]

    return encode


def build_cache(
    manifest: VocabularyManifest,
    model_tag: str,
    encoder: Encoder | None = None,
    split_camel: bool = False,
) -> dict:
    """Embed every manifest symbol; returns the cache document as a dict.

    Cache keys are always the raw symbols; ``split_camel`` only changes the
    text handed to the encoder.
    """
    if encoder is None:
        encoder = load_sbert_encoder(model_tag)
    texts = [split_camel_case(s) if split_camel else s for s in manifest.symbols]
    rows = encoder(texts)
    if len(rows) != len(manifest.symbols):
        raise ValueError(
            f"encoder returned {len(rows)} vectors for {len(manifest.symbols)} symbols"
        )
    dims = {len(row) for row in rows}
    if len(dims) != 1:
        raise ValueError(f"encoder returned mixed dimensions: {sorted(dims)}")
    for symbol, row in zip(manifest.symbols, rows):
        if not any(row):
            raise ValueError(f"encoder returned a zero vector for {symbol!r}")
    return {
        "model": model_tag,
        "dim": dims.pop(),
        "vectors": {s: [float(x) for x in row] for s, row in zip(manifest.symbols, rows)},
    }


def export_cache(
    manifest: VocabularyManifest,
    model_tag: str,
    destination,
    encoder: Encoder | None = None,
    split_camel: bool = False,
) -> None:
    cache = build_cache(manifest, model_tag, encoder, split_camel)
    with open(destination, "w", encoding="utf-8") as fh:
        json.dump(cache, fh, indent=2)
        fh.write("\n")
