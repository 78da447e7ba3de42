"""Per-comparison contextual weights for symbols (w_p) and clauses (w_c).

A profile belongs to one argument within one comparison, with separate maps
for the support and the claim: the same symbol may legitimately carry a
different weight in each component.  Symbol weights cover predicates and
term symbols alike; clause weights are keyed by the canonical clause string
so they survive clause reordering under normalization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .cnf import Clause, ClauseSet, CompiledArgument
from .syntax import Function, Variable

SUM_TOLERANCE = 1e-6


class WeightValidationError(ValueError):
    """Carries every violation found, not just the first."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class MissingWeightError(KeyError):
    def __init__(self, kind: str, key: str):
        super().__init__(key)
        self.kind = kind
        self.key = key

    def __str__(self):
        return f"no {self.kind} weight for {self.key!r}"


@dataclass(frozen=True)
class ComponentWeights:
    """w_p over the component's vocabulary and w_c over its clauses."""

    symbols: Mapping[str, float]
    clauses: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "symbols", MappingProxyType(dict(self.symbols)))
        object.__setattr__(self, "clauses", MappingProxyType(dict(self.clauses)))

    def symbol_weight(self, symbol: str) -> float:
        try:
            return self.symbols[symbol]
        except KeyError:
            raise MissingWeightError("symbol", symbol) from None

    def clause_weight(self, clause: Clause | str) -> float:
        key = str(clause)
        try:
            return self.clauses[key]
        except KeyError:
            raise MissingWeightError("clause", key) from None


@dataclass(frozen=True)
class WeightProfile:
    support: ComponentWeights
    claim: ComponentWeights

    def component(self, name: str) -> ComponentWeights:
        if name == "support":
            return self.support
        if name == "claim":
            return self.claim
        raise ValueError(f"unknown component {name!r}")


@dataclass(frozen=True)
class ComparisonWeights:
    """Profiles for the two arguments of one comparison (self-comparison allowed)."""

    pair: tuple[str, str]
    profiles: Mapping[str, WeightProfile]

    def __post_init__(self):
        object.__setattr__(self, "profiles", MappingProxyType(dict(self.profiles)))
        for arg_id in self.pair:
            if arg_id not in self.profiles:
                raise ValueError(f"no weight profile for argument {arg_id!r}")

    def profile_for(self, arg_id: str) -> WeightProfile:
        return self.profiles[arg_id]


def _component_vocabulary(cs: ClauseSet) -> tuple[set[str], set[str]]:
    """(all symbols, the subset that are bare variables) of a clause set."""
    symbols: set[str] = set()
    variables: set[str] = set()
    for clause in cs:
        for lit in clause:
            symbols.add(lit.predicate)
            for term in lit.args:
                symbols.add(str(term))
                if isinstance(term, Variable):
                    variables.add(term.name)
                elif isinstance(term, Function):
                    # nested symbols are not compared individually, only the
                    # rendered term is; no entry needed below the top level
                    pass
    return symbols, variables


def _validate_component(
    name: str,
    weights: ComponentWeights,
    cs: ClauseSet,
    violations: list[str],
    auto_normalize: bool,
) -> ComponentWeights:
    symbols, variables = _component_vocabulary(cs)
    sym_map = dict(weights.symbols)
    for s in sorted(symbols):
        if s not in sym_map:
            if s in variables:
                sym_map[s] = 0.0
            else:
                violations.append(f"{name}: missing symbol entry {s!r}")
    clause_keys = [str(c) for c in cs]
    cl_map = dict(weights.clauses)
    for key in clause_keys:
        if key not in cl_map:
            violations.append(f"{name}: missing clause entry {key!r}")

    for label, mapping in (("symbol", sym_map), ("clause", cl_map)):
        for key, value in mapping.items():
            if value < 0:
                violations.append(f"{name}: negative {label} weight {value} for {key!r}")

    def check_sum(label: str, mapping: dict[str, float], keys) -> dict[str, float]:
        in_scope = {k: mapping[k] for k in keys if k in mapping}
        if not keys:
            return in_scope
        total = sum(in_scope.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            if auto_normalize and total > 0:
                return {k: v / total for k, v in in_scope.items()}
            violations.append(f"{name}: {label} weights sum to {total:.6f}, expected 1")
        return in_scope

    sym_final = check_sum("symbol", sym_map, sorted(symbols))
    cl_final = check_sum("clause", cl_map, clause_keys)
    return ComponentWeights(sym_final, cl_final)


def validate(
    profile: WeightProfile, against: CompiledArgument, auto_normalize: bool = False
) -> WeightProfile:
    """Check the profile against a compiled argument; report all violations.

    Variables omitted from the file default to weight 0 (only variables may
    be omitted).  Entries for symbols or clauses outside the component are
    ignored.  Returns the validated profile with variable defaults filled in.
    """
    violations: list[str] = []
    support = _validate_component(
        "support", profile.support, against.support, violations, auto_normalize
    )
    claim = _validate_component("claim", profile.claim, against.claim, violations, auto_normalize)
    if violations:
        raise WeightValidationError(violations)
    return WeightProfile(support, claim)


def default_uniform(a: CompiledArgument) -> WeightProfile:
    """1/n per clause and 1/m per distinct symbol (variables included)."""

    def component(cs: ClauseSet) -> ComponentWeights:
        symbols, _ = _component_vocabulary(cs)
        m = len(symbols)
        n = len(cs)
        return ComponentWeights(
            symbols={s: 1.0 / m for s in sorted(symbols)},
            clauses={str(c): 1.0 / n for c in cs},
        )

    return WeightProfile(component(a.support), component(a.claim))


def uniform_comparison(a: CompiledArgument, b: CompiledArgument) -> ComparisonWeights:
    profiles = {a.id: default_uniform(a)}
    if b.id not in profiles:
        profiles[b.id] = default_uniform(b)
    return ComparisonWeights((a.id, b.id), profiles)


def load_comparison_weights(document: str) -> ComparisonWeights:
    """Parse a weights file (JSON, one section per argument id)."""
    data = json.loads(document)
    if not isinstance(data, dict) or "pair" not in data:
        raise ValueError("weights file must be an object with a 'pair' field")
    pair = data["pair"]
    if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
        raise ValueError("'pair' must be a two-element array of argument ids")

    def component(section: dict, arg_id: str, name: str) -> ComponentWeights:
        if name not in section:
            raise ValueError(f"{arg_id}: missing {name!r} section")
        comp = section[name]
        return ComponentWeights(
            symbols={str(k): float(v) for k, v in comp.get("symbols", {}).items()},
            clauses={str(k): float(v) for k, v in comp.get("clauses", {}).items()},
        )

    profiles = {}
    for arg_id in pair:
        if arg_id in profiles:
            continue
        if arg_id not in data:
            raise ValueError(f"weights file has no section for argument {arg_id!r}")
        section = data[arg_id]
        profiles[arg_id] = WeightProfile(
            support=component(section, arg_id, "support"),
            claim=component(section, arg_id, "claim"),
        )
    return ComparisonWeights((pair[0], pair[1]), profiles)
