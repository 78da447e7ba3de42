"""Offline embedding-cache precomputation for the argsim embedding backend."""

from .export import (
    Encoder,
    ModelLoadError,
    build_cache,
    export_cache,
    load_sbert_encoder,
    split_camel_case,
)
from .vocab import ExtractionError, VocabularyManifest, compile_to_json, extract_vocabulary

__version__ = "0.1.0"
