"""Command-line interface: compile, sim, crossover, audit.

Exit codes: 0 on success, 1 for domain errors (weight validation, missing
cache symbols, infeasible audit parameters), 2 for usage errors including
malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import audit as audit_mod
from .explain import FORMATS as EXPLAIN_FORMATS
from .explain import emit as emit_explanation
from .explain import explain as build_explanation
from .backends import MissingSymbolError, load_backend
from .cnf import CompiledArgument, compile_argument
from .core import TVERSKY_PRESETS, SimConfig, crossover_eta
from .syntax import ArgumentFormatError, ParseError, parse_argument
from .weights import (
    MissingWeightError,
    WeightValidationError,
    WeightProfile,
    ComparisonWeights,
    load_comparison_weights,
    uniform_comparison,
    validate,
)

USAGE_ERROR = 2
DOMAIN_ERROR = 1


class _UsageError(Exception):
    pass


class _DomainError(Exception):
    pass


def _load_argument(path: str) -> CompiledArgument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = fh.read()
    except OSError as e:
        raise _UsageError(f"{path}: {e}") from e
    try:
        return compile_argument(parse_argument(document))
    except (ParseError, ArgumentFormatError) as e:
        raise _UsageError(f"{path}: {e}") from e


def _add_model_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--lambda", dest="lam", type=float, default=0.8,
                        help="positional vs best-match term blend (default 0.8)")
    parser.add_argument("--eta", type=float, default=0.5,
                        help="support vs claim blend (default 0.5)")
    parser.add_argument("--preset", choices=sorted(TVERSKY_PRESETS), default="dic",
                        help="Tversky coefficient preset (default dic)")
    parser.add_argument("--alpha", type=float, default=None,
                        help="explicit Tversky alpha (overrides --preset with --beta)")
    parser.add_argument("--beta", type=float, default=None,
                        help="explicit Tversky beta (overrides --preset with --alpha)")
    parser.add_argument("--g", choices=("avg", "prod"), default="avg",
                        help="clause pair weight aggregation (default avg)")
    parser.add_argument("--backend", default="eq",
                        help="symbol similarity: eq, lookup:PATH, or embedding:PATH")


def _config_from_flags(args) -> SimConfig:
    try:
        provider = load_backend(args.backend)
    except (OSError, ValueError) as e:
        raise _UsageError(str(e)) from e
    explicit = args.alpha is not None or args.beta is not None
    if explicit and (args.alpha is None or args.beta is None):
        raise _UsageError("--alpha and --beta must be given together")
    try:
        if explicit:
            return SimConfig(provider=provider, lam=args.lam, eta=args.eta,
                             alpha=args.alpha, beta=args.beta, tversky_preset=None,
                             pair_weight_aggregator=args.g)
        return SimConfig(provider=provider, lam=args.lam, eta=args.eta,
                         tversky_preset=args.preset, pair_weight_aggregator=args.g)
    except ValueError as e:
        raise _UsageError(str(e)) from e


def cmd_compile(args) -> int:
    compiled = _load_argument(args.argument)
    if args.format == "json":
        payload = {
            "id": compiled.id,
            "support": [str(c) for c in compiled.support],
            "claim": [str(c) for c in compiled.claim],
            "symbols": sorted(compiled.support.symbols() | compiled.claim.symbols()),
            "trivial": compiled.is_trivial,
            "claim_is_multiclause": compiled.claim_is_multiclause,
        }
        print(json.dumps(payload, indent=2))
        return 0
    if compiled.is_trivial:
        print(f"{compiled.id}: trivial argument (empty support, claim True)")
        return 0
    print(f"id: {compiled.id}")
    print("support:")
    for clause in compiled.support:
        print(f"  {clause}")
    print("claim:")
    for clause in compiled.claim:
        print(f"  {clause}")
    if compiled.claim_is_multiclause:
        print(
            f"note: claim compiled to {len(compiled.claim)} clauses; "
            "it may not be minimal as a claim",
            file=sys.stderr,
        )
    return 0


def _weights_for(args, a: CompiledArgument, b: CompiledArgument) -> ComparisonWeights:
    if args.weights is None:
        return uniform_comparison(a, b)
    try:
        with open(args.weights, "r", encoding="utf-8") as fh:
            weights = load_comparison_weights(fh.read())
    except OSError as e:
        raise _UsageError(f"{args.weights}: {e}") from e
    except ValueError as e:
        raise _UsageError(f"{args.weights}: {e}") from e
    if set(weights.pair) != {a.id, b.id}:
        raise _DomainError(
            f"weights file is for pair {weights.pair}, arguments are "
            f"({a.id!r}, {b.id!r})"
        )
    validated: dict[str, WeightProfile] = {}
    for arg in (a, b):
        try:
            validated[arg.id] = validate(
                weights.profile_for(arg.id), arg, auto_normalize=args.auto_normalize
            )
        except WeightValidationError as e:
            raise _DomainError(f"weights for {arg.id!r}: {e}") from e
    return ComparisonWeights((a.id, b.id), validated)


def cmd_sim(args) -> int:
    config = _config_from_flags(args)
    a = _load_argument(args.argument_a)
    b = _load_argument(args.argument_b)
    if a.id == b.id and args.argument_a != args.argument_b:
        raise _DomainError(f"both files declare argument id {a.id!r}")
    weights = _weights_for(args, a, b)
    try:
        explanation = build_explanation(a, b, config, weights)
    except (MissingWeightError, MissingSymbolError) as e:
        raise _DomainError(str(e)) from e
    print(f"{explanation.final_score:.3f}")
    if args.explain is not None:
        suffix = args.explain.rsplit(".", 1)[-1].lower()
        if suffix not in EXPLAIN_FORMATS:
            raise _UsageError(
                f"--explain destination must end in one of {EXPLAIN_FORMATS}"
            )
        emit_explanation(explanation, suffix, args.explain)
        print(f"explanation written to {args.explain}", file=sys.stderr)
    return 0


def cmd_crossover(args) -> int:
    eta = crossover_eta(args.support1, args.claim1, args.support2, args.claim2)
    print("none" if eta is None else f"{eta:.3f}")
    return 0


def cmd_audit(args) -> int:
    config = _config_from_flags(args)
    if args.grid:
        configs = [
            SimConfig(provider=config.provider, lam=lam, eta=args.eta,
                      tversky_preset=preset, pair_weight_aggregator=g)
            for lam in (0.2, 0.8)
            for preset in ("jac", "dic", "ss")
            for g in ("avg", "prod")
        ]
    else:
        configs = [config]
    try:
        params = audit_mod.GeneratorParams(
            seed=args.seed,
            predicates=args.predicates,
            constants=args.constants,
            functions=args.functions,
            max_clauses=args.max_clauses,
            max_literals=args.max_literals,
            max_arity=args.max_arity,
        )
        principles = args.principles.split(",") if args.principles else None
        report = audit_mod.run_audit(configs, params, args.cases, principles)
    except (audit_mod.InfeasibleConstructionError, ValueError) as e:
        raise _DomainError(str(e)) from e
    print(report.summary_table())
    if args.report is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        print(f"report written to {args.report}", file=sys.stderr)
    return 0 if report.ok else DOMAIN_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argsim",
        description="Compile first-order arguments to CNF and score their "
        "context-weighted similarity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile", help="compile an argument file to clause sets")
    p_compile.add_argument("argument", help="argument file (JSON)")
    p_compile.add_argument("--format", choices=("text", "json"), default="text")
    p_compile.set_defaults(func=cmd_compile)

    p_sim = sub.add_parser("sim", help="score the similarity of two arguments")
    p_sim.add_argument("argument_a")
    p_sim.add_argument("argument_b")
    p_sim.add_argument("--weights", default=None, help="weights file (JSON); uniform if omitted")
    p_sim.add_argument("--auto-normalize", action="store_true",
                       help="rescale weight sums to 1 instead of erroring")
    p_sim.add_argument("--explain", default=None, metavar="OUT.{json,csv,svg,png}",
                       help="write the score decomposition to a file")
    _add_model_flags(p_sim)
    p_sim.set_defaults(func=cmd_sim)

    p_cross = sub.add_parser(
        "crossover",
        help="eta where two (support, claim) score lines cross, or 'none'",
    )
    for name in ("support1", "claim1", "support2", "claim2"):
        p_cross.add_argument(name, type=float)
    p_cross.set_defaults(func=cmd_crossover)

    p_audit = sub.add_parser("audit", help="property-check the similarity postulates")
    _add_model_flags(p_audit)
    p_audit.add_argument("--grid", action="store_true",
                         help="cycle the lambda x preset x aggregator calibration grid")
    p_audit.add_argument("-n", "--cases", type=int, default=100,
                         help="cases per principle (default 100)")
    p_audit.add_argument("--seed", type=int, default=0)
    p_audit.add_argument("--principles", default=None,
                         help="comma-separated subset of principles to run")
    p_audit.add_argument("--predicates", type=int, default=4)
    p_audit.add_argument("--constants", type=int, default=4)
    p_audit.add_argument("--functions", type=int, default=1)
    p_audit.add_argument("--max-clauses", type=int, default=3)
    p_audit.add_argument("--max-literals", type=int, default=2)
    p_audit.add_argument("--max-arity", type=int, default=2)
    p_audit.add_argument("--report", default=None, help="write the JSON report here")
    p_audit.set_defaults(func=cmd_audit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except _DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
