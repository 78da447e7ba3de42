"""Command line: extract vocabularies and precompute embedding caches."""

from __future__ import annotations

import argparse
import sys

from .export import ModelLoadError, export_cache
from .vocab import ExtractionError, VocabularyManifest, extract_vocabulary

DEFAULT_MODEL = "sentence-transformers/all-MiniLM-L6-v2"


def cmd_vocab(args) -> int:
    manifest = extract_vocabulary(args.arguments)
    if args.output is None:
        print(manifest.to_json(), end="")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json())
        print(f"{len(manifest.symbols)} symbols written to {args.output}", file=sys.stderr)
    return 0


def cmd_cache(args) -> int:
    with open(args.manifest, "r", encoding="utf-8") as fh:
        manifest = VocabularyManifest.from_json(fh.read())
    export_cache(manifest, args.model, args.output, split_camel=args.split_camel_case)
    print(
        f"cache for {len(manifest.symbols)} symbols written to {args.output}",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Precompute symbol embedding caches for argsim's embedding backend.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_vocab = sub.add_parser("vocab", help="extract the symbol vocabulary of argument files")
    p_vocab.add_argument("arguments", nargs="+", help="argument files (JSON)")
    p_vocab.add_argument("-o", "--output", default=None, help="manifest path (stdout if omitted)")
    p_vocab.set_defaults(func=cmd_vocab)

    p_cache = sub.add_parser("cache", help="embed a manifest into a cache file")
    p_cache.add_argument("manifest", help="vocabulary manifest (JSON)")
    p_cache.add_argument("--model", default=DEFAULT_MODEL, help=f"model tag (default {DEFAULT_MODEL})")
    p_cache.add_argument("-o", "--output", required=True, help="cache path")
    p_cache.add_argument("--split-camel-case", action="store_true",
                         help="split CamelCase symbols into words before embedding")
    p_cache.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ExtractionError as e:
        for failure in e.failures:
            print(f"error: {failure}", file=sys.stderr)
        return 1
    except (ModelLoadError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
