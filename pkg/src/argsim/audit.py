"""Property audit of the similarity postulates over generated arguments.

Each principle check constructs cases that satisfy the postulate's
preconditions by construction (cloning and editing one clause, renaming into
a fresh vocabulary block), evaluates the postulate's conclusion, and records
violations with enough detail to replay them.  Non-Zero is expected to fail
for every shipped model; Syntax Independence is expected to fail for
syntax-sensitive providers, and both get flagged as such instead of being
counted as defects.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .backends import SymbolSimilarityProvider
from .cnf import Clause, ClauseSet, CompiledArgument, Literal
from .core import SimConfig, sim_arg, sim_clause
from .syntax import Constant, Function, Term, Variable
from .weights import (
    ComparisonWeights,
    ComponentWeights,
    WeightProfile,
    uniform_comparison,
)

TOLERANCE = 1e-9

PRINCIPLES = (
    "maximality",
    "symmetry",
    "substitution",
    "syntax_independence",
    "minimality",
    "nonzero",
    "s_monotony0",
    "s_monotony1",
    "c_monotony0",
    "c_monotony1",
    "s_reinforcement_geq",
    "s_reinforcement_gt",
    "c_reinforcement_geq",
    "c_reinforcement_gt",
)


class InfeasibleConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    predicates: int = 4
    constants: int = 4
    functions: int = 1
    max_clauses: int = 3
    max_literals: int = 2
    max_arity: int = 2

    def __post_init__(self):
        for name in ("predicates", "constants", "functions", "max_clauses",
                     "max_literals", "max_arity"):
            if getattr(self, name) < 1:
                raise InfeasibleConstructionError(f"{name} must be >= 1")


# --- generation -------------------------------------------------------------


def _canonical_clause_vars(clause: Clause, prefix: str = "") -> Clause:
    """Renumber variables by first occurrence, iterated to a fixpoint so the
    clause is stable under the renumbering used by bijective_equal.  The
    prefix keeps variables of disjoint vocabulary blocks disjoint too."""
    for _ in range(8):
        mapping: dict[str, str] = {}

        def walk(t: Term) -> Term:
            if isinstance(t, Variable):
                return Variable(mapping.setdefault(t.name, f"{prefix}x{len(mapping)}"))
            if isinstance(t, Function):
                return Function(t.name, tuple(walk(a) for a in t.args))
            return t

        renamed = Clause(
            tuple(Literal(l.predicate, tuple(walk(a) for a in l.args)) for l in clause)
        )
        if renamed == clause:
            return clause
        clause = renamed
    return clause


def _gen_term(rng: random.Random, params: GeneratorParams, prefix: str, depth: int = 0) -> Term:
    roll = rng.random()
    if roll < 0.2:
        return Variable(f"{prefix}x{rng.randrange(3)}")
    if roll < 0.3 and depth == 0:
        inner = _gen_term(rng, params, prefix, depth=1)
        return Function(f"{prefix}f{rng.randrange(params.functions)}", (inner,))
    return Constant(f"{prefix}c{rng.randrange(params.constants)}")


def _pred_arity(k: int, params: GeneratorParams) -> int:
    return k % (params.max_arity + 1)


def _gen_literal(
    rng: random.Random, params: GeneratorParams, prefix: str, min_arity: int = 0
) -> Literal:
    """Sample a literal over a fixed-arity signature: predicate P<k> always
    carries arity k mod (max_arity + 1), so a predicate name never occurs at
    two different arities (arguments come from a well-formed language)."""
    candidates = [k for k in range(params.predicates) if _pred_arity(k, params) >= min_arity]
    if not candidates:
        raise InfeasibleConstructionError(
            f"no predicate of arity >= {min_arity} in a vocabulary of "
            f"{params.predicates} predicates with max_arity {params.max_arity}"
        )
    k = candidates[rng.randrange(len(candidates))]
    name = f"{prefix}P{k}"
    if rng.random() < 0.3:
        name = "not" + name
    arity = _pred_arity(k, params)
    return Literal(name, tuple(_gen_term(rng, params, prefix) for _ in range(arity)))


def gen_clause(
    rng: random.Random, params: GeneratorParams, prefix: str = "", min_arity: int = 0
) -> Clause:
    """min_arity=1 keeps a fresh-vocabulary clause fully dissimilar even from
    0-ary literals, whose empty term vectors otherwise count as matching."""
    n = rng.randint(1, params.max_literals)
    clause = Clause(tuple(_gen_literal(rng, params, prefix, min_arity) for _ in range(n)))
    return _canonical_clause_vars(clause, prefix)


def gen_clause_set(
    rng: random.Random, params: GeneratorParams, max_clauses: int, prefix: str = ""
) -> ClauseSet:
    n = rng.randint(1, max_clauses)
    return ClauseSet(tuple(gen_clause(rng, params, prefix) for _ in range(n)))


def gen_argument(params: GeneratorParams, arg_id: str | None = None, prefix: str = "") -> CompiledArgument:
    """Deterministic in the seed; always non-trivial."""
    rng = random.Random(f"gen:{params.seed}")
    support = gen_clause_set(rng, params, params.max_clauses, prefix)
    claim = gen_clause_set(rng, params, max(1, params.max_clauses // 2), prefix)
    return CompiledArgument(arg_id or f"arg{params.seed}", support, claim)


# --- renaming ---------------------------------------------------------------


def vocabulary(a: CompiledArgument) -> set[str]:
    """Every predicate name and term symbol (constants, variables, function
    names) occurring in the compiled argument."""
    names: set[str] = set()

    def walk(t: Term):
        names.add(t.name)  # type: ignore[attr-defined]
        if isinstance(t, Function):
            for inner in t.args:
                walk(inner)

    for cs in (a.support, a.claim):
        for clause in cs:
            for lit in clause:
                names.add(lit.predicate)
                for term in lit.args:
                    walk(term)
    return names


def rename(pi: Mapping[str, str], a: CompiledArgument) -> CompiledArgument:
    """Apply a bijective symbol renaming homomorphically, then re-normalize."""
    vocab = vocabulary(a)
    missing = sorted(v for v in vocab if v not in pi)
    if missing:
        raise ValueError(f"renaming is not total on the vocabulary: missing {missing}")
    used = {k: pi[k] for k in vocab}
    if len(set(used.values())) != len(used):
        raise ValueError("renaming is not injective on the vocabulary")

    def walk(t: Term) -> Term:
        if isinstance(t, Variable):
            return Variable(pi[t.name])
        if isinstance(t, Constant):
            return Constant(pi[t.name])
        assert isinstance(t, Function)
        return Function(pi[t.name], tuple(walk(x) for x in t.args))

    def map_set(cs: ClauseSet) -> ClauseSet:
        return ClauseSet(
            tuple(
                Clause(
                    tuple(
                        Literal(pi[l.predicate], tuple(walk(x) for x in l.args))
                        for l in clause
                    )
                )
                for clause in cs
            )
        )

    return CompiledArgument(a.id, map_set(a.support), map_set(a.claim))


def _fresh_renaming(args: Sequence[CompiledArgument], rng: random.Random, tag: str) -> dict[str, str]:
    vocab = sorted(set().union(*(vocabulary(a) for a in args)))
    targets = [f"{tag}{i}" for i in range(len(vocab))]
    rng.shuffle(targets)
    return dict(zip(vocab, targets))


# --- report types -----------------------------------------------------------


def serialize_argument(a: CompiledArgument) -> dict:
    return {
        "id": a.id,
        "support": [str(c) for c in a.support],
        "claim": [str(c) for c in a.claim],
    }


@dataclass
class Violation:
    case_index: int
    case_seed: int
    message: str
    inputs: dict


@dataclass
class PrincipleReport:
    principle: str
    cases: int
    expected_fail: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether the observed behaviour matches the documented expectation."""
        if self.expected_fail:
            return len(self.violations) >= 1
        return not self.violations

    @property
    def verdict(self) -> str:
        if self.expected_fail:
            return "expected-fail" if self.violations else "expected-fail (not exhibited)"
        return "pass" if not self.violations else "FAIL"


@dataclass
class AuditReport:
    reports: list[PrincipleReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "principles": [
                {
                    "principle": r.principle,
                    "cases": r.cases,
                    "expected_fail": r.expected_fail,
                    "verdict": r.verdict,
                    "violations": [
                        {
                            "case_index": v.case_index,
                            "case_seed": v.case_seed,
                            "message": v.message,
                            "inputs": v.inputs,
                        }
                        for v in r.violations
                    ],
                }
                for r in self.reports
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary_table(self) -> str:
        width = max(len(r.principle) for r in self.reports)
        lines = [f"{'principle'.ljust(width)}  cases  violations  verdict"]
        for r in self.reports:
            lines.append(
                f"{r.principle.ljust(width)}  {r.cases:>5}  {len(r.violations):>10}  {r.verdict}"
            )
        return "\n".join(lines)


# --- case constructions -----------------------------------------------------


def _sub_params(params: GeneratorParams, rng: random.Random) -> GeneratorParams:
    return replace(params, seed=rng.getrandbits(32))


def _pair(rng: random.Random, params: GeneratorParams) -> tuple[CompiledArgument, CompiledArgument]:
    a = gen_argument(_sub_params(params, rng), "A")
    b = gen_argument(_sub_params(params, rng), "B")
    return a, b


def _check_maximality(rng, config, params):
    a = gen_argument(_sub_params(params, rng), "A")
    s = sim_arg(a, a, config, uniform_comparison(a, a))
    if abs(s - 1.0) > TOLERANCE:
        return f"sim(A, A) = {s!r}", {"A": serialize_argument(a)}
    return None


def _check_symmetry(rng, config, params):
    a, b = _pair(rng, params)
    w = uniform_comparison(a, b)
    s_ab = sim_arg(a, b, config, w)
    s_ba = sim_arg(b, a, config, ComparisonWeights((b.id, a.id), dict(w.profiles)))
    if abs(s_ab - s_ba) > TOLERANCE:
        return (
            f"sim(A, B) = {s_ab!r} but sim(B, A) = {s_ba!r}",
            {"A": serialize_argument(a), "B": serialize_argument(b)},
        )
    return None


def _check_substitution(rng, config, params):
    a = gen_argument(_sub_params(params, rng), "A")
    b = CompiledArgument("B", a.support, a.claim)
    c = gen_argument(_sub_params(params, rng), "C")
    s_ab = sim_arg(a, b, config, uniform_comparison(a, b))
    if abs(s_ab - 1.0) > TOLERANCE:
        return (
            f"precondition sim(A, B) = 1 not met: {s_ab!r}",
            {"A": serialize_argument(a), "B": serialize_argument(b)},
        )
    s_ac = sim_arg(a, c, config, uniform_comparison(a, c))
    s_bc = sim_arg(b, c, config, uniform_comparison(b, c))
    if abs(s_ac - s_bc) > TOLERANCE:
        return (
            f"sim(A, C) = {s_ac!r} differs from sim(B, C) = {s_bc!r}",
            {
                "A": serialize_argument(a),
                "B": serialize_argument(b),
                "C": serialize_argument(c),
            },
        )
    return None


def _distinguishing_triple(provider: SymbolSimilarityProvider) -> tuple[str, str, str] | None:
    """Symbols with score(s1, s2) != score(s1, s3), if the provider has any."""
    entries = getattr(provider, "entries", None)
    if entries is not None:
        for key, value in sorted(entries.items(), key=lambda kv: sorted(kv[0])):
            if isinstance(key, frozenset) and len(key) == 2 and value > 0:
                s1, s2 = sorted(key)
                fresh = "zzfresh"
                while fresh in (s1, s2):
                    fresh += "z"
                if provider.score(s1, fresh) != value:
                    return s1, s2, fresh
        return None
    vectors = getattr(provider, "vectors", None)
    if vectors is not None:
        keys = sorted(vectors)
        for s1 in keys:
            for s2 in keys:
                for s3 in keys:
                    if len({s1, s2, s3}) == 3 and provider.score(s1, s2) != provider.score(s1, s3):
                        return s1, s2, s3
    return None


def _single_literal_argument(arg_id: str, pred: str, symbol: str) -> CompiledArgument:
    cs = ClauseSet((Clause((Literal(pred, (Constant(symbol),)),)),))
    return CompiledArgument(arg_id, cs, cs)


def _check_syntax_independence(rng, config, params, constructed: bool):
    if constructed:
        triple = _distinguishing_triple(config.provider)
        if triple is None:
            return None
        s1, s2, s3 = triple
        a = _single_literal_argument("A", "Rel", s1)
        b = _single_literal_argument("B", "Rel", s2)
        pi = {"Rel": "Rel", s1: s1, s2: s3}
        a2, b2 = a, rename(pi, b)
    else:
        a, b = _pair(rng, params)
        pi = _fresh_renaming([a, b], rng, "m")
        a2, b2 = rename(pi, a), rename(pi, b)
    s = sim_arg(a, b, config, uniform_comparison(a, b))
    s2_val = sim_arg(a2, b2, config, uniform_comparison(a2, b2))
    if abs(s - s2_val) > TOLERANCE:
        return (
            f"sim = {s!r} before renaming, {s2_val!r} after",
            {
                "A": serialize_argument(a),
                "B": serialize_argument(b),
                "renaming": {k: v for k, v in sorted(pi.items())} if constructed else "fresh block",
            },
        )
    return None


def _check_minimality(rng, config, params):
    a = gen_argument(_sub_params(params, rng), "A")
    b0 = gen_argument(_sub_params(params, rng), "B")
    pi = _fresh_renaming([b0], rng, "zzd")
    b = rename(pi, b0)
    s = sim_arg(a, b, config, uniform_comparison(a, b))
    if abs(s) > TOLERANCE:
        return (
            f"disjoint-vocabulary arguments scored {s!r}",
            {"A": serialize_argument(a), "B": serialize_argument(b)},
        )
    return None


def _check_nonzero(rng, config, params, constructed: bool):
    if constructed:
        a = CompiledArgument(
            "A",
            ClauseSet((Clause((Literal("Shared", (Constant("nzA"),)),)),)),
            ClauseSet((Clause((Literal("KA", (Constant("nzA"),)),)),)),
        )
        b = CompiledArgument(
            "B",
            ClauseSet((Clause((Literal("Shared", (Constant("nzB"),)),)),)),
            ClauseSet((Clause((Literal("KB", (Constant("nzB"),)),)),)),
        )
        # the shared predicate gets weight 0; the disjoint remainder dominates
        profiles = {
            "A": WeightProfile(
                ComponentWeights({"Shared": 0.0, "nzA": 1.0}, {"Shared(nzA)": 1.0}),
                ComponentWeights({"KA": 0.5, "nzA": 0.5}, {"KA(nzA)": 1.0}),
            ),
            "B": WeightProfile(
                ComponentWeights({"Shared": 0.0, "nzB": 1.0}, {"Shared(nzB)": 1.0}),
                ComponentWeights({"KB": 0.5, "nzB": 0.5}, {"KB(nzB)": 1.0}),
            ),
        }
        weights = ComparisonWeights(("A", "B"), profiles)
    else:
        a, b0 = _pair(rng, params)
        pred = next(iter(a.support)).literals[0].predicate
        extra = Clause((Literal(pred, (Constant("nzshared"),)),))
        b = CompiledArgument(b0.id, ClauseSet(b0.support.clauses + (extra,)), b0.claim)
        weights = uniform_comparison(a, b)
    s = sim_arg(a, b, config, weights)
    if s <= 0.0:
        return (
            f"supports share predicate-level similarity but sim = {s!r}",
            {"A": serialize_argument(a), "B": serialize_argument(b)},
        )
    return None


def _with_support(a: CompiledArgument, arg_id: str, clauses: tuple[Clause, ...]) -> CompiledArgument:
    return CompiledArgument(arg_id, ClauseSet(clauses), a.claim)


def _with_claim(a: CompiledArgument, arg_id: str, clauses: tuple[Clause, ...]) -> CompiledArgument:
    return CompiledArgument(arg_id, a.support, ClauseSet(clauses))


def _check_monotony(rng, config, params, component: str, branch: int):
    a = gen_argument(_sub_params(params, rng), "A")
    c = gen_argument(_sub_params(params, rng), "C")
    c_component = c.support if component == "support" else c.claim

    if branch == 0:
        beta = gen_clause(rng, params, prefix="zzm", min_arity=1)
    else:
        a_component = a.support if component == "support" else a.claim
        candidates = [cl for cl in c_component if cl not in a_component]
        if not candidates:
            # every clause of C's component is already in A's: give C a fresh
            # clause so that a copyable new clause exists
            fresh = gen_clause(rng, params, prefix="zzm", min_arity=1)
            if component == "support":
                c = _with_support(c, "C", c.support.clauses + (fresh,))
            else:
                c = _with_claim(c, "C", c.claim.clauses + (fresh,))
            c_component = c.support if component == "support" else c.claim
            candidates = [fresh]
        beta = candidates[0]

    if component == "support":
        b = _with_support(a, "B", a.support.clauses + (beta,))
    else:
        b = _with_claim(a, "B", a.claim.clauses + (beta,))

    # sanity: the construction must actually pin every clause similarity to 0/1
    target = 0.0 if branch == 0 else 1.0
    sims = [sim_clause(alpha, beta, config, "flat") for alpha in c_component]
    agg = max(sims, default=0.0)
    if branch == 0 and any(s != 0.0 for s in sims):
        raise InfeasibleConstructionError("fresh-vocabulary clause is not fully dissimilar")
    if branch == 1 and agg != 1.0:
        raise InfeasibleConstructionError("copied clause is not fully similar")

    s_ac = sim_arg(a, c, config, uniform_comparison(a, c))
    s_bc = sim_arg(b, c, config, uniform_comparison(b, c))
    if branch == 0 and s_ac < s_bc - TOLERANCE:
        message = f"adding a {target}-similarity clause raised sim: {s_ac!r} -> {s_bc!r}"
    elif branch == 1 and s_ac > s_bc + TOLERANCE:
        message = f"adding a {target}-similarity clause lowered sim: {s_ac!r} -> {s_bc!r}"
    else:
        return None
    return message, {
        "A": serialize_argument(a),
        "B": serialize_argument(b),
        "C": serialize_argument(c),
        "beta": str(beta),
    }


def _check_reinforcement(rng, config, params, component: str, strict: bool):
    shared = gen_clause_set(rng, params, params.max_clauses)
    c = gen_argument(_sub_params(params, rng), "C")
    if strict:
        # a single-clause component makes "strictly better everywhere" achievable
        single = (next(iter(c.support)),) if component == "support" else (next(iter(c.claim)),)
        c = _with_support(c, "C", single) if component == "support" else _with_claim(c, "C", single)
    c_component = c.support if component == "support" else c.claim

    alpha = next(iter(c_component))
    beta = gen_clause(rng, params, prefix="zzr", min_arity=1)
    base = tuple(cl for cl in shared if cl != alpha and cl != beta)

    shell = gen_argument(_sub_params(params, rng), "A")
    if component == "support":
        a = _with_support(shell, "A", base + (alpha,))
        b = _with_support(shell, "B", base + (beta,))
    else:
        a = _with_claim(shell, "A", base + (alpha,))
        b = _with_claim(shell, "B", base + (beta,))

    # construction sanity: alpha dominates beta against every clause of C
    for phi in c_component:
        s_alpha = sim_clause(alpha, phi, config, "flat")
        s_beta = sim_clause(beta, phi, config, "flat")
        if s_beta != 0.0:
            raise InfeasibleConstructionError("fresh clause beta is not fully dissimilar")
        if strict and s_alpha <= s_beta:
            raise InfeasibleConstructionError("alpha does not strictly dominate beta")

    s_ac = sim_arg(a, c, config, uniform_comparison(a, c))
    s_bc = sim_arg(b, c, config, uniform_comparison(b, c))
    if strict:
        if s_ac <= s_bc:
            message = f"strict dominance did not increase sim: {s_ac!r} vs {s_bc!r}"
        else:
            return None
    else:
        if s_ac < s_bc - TOLERANCE:
            message = f"dominance decreased sim: {s_ac!r} vs {s_bc!r}"
        else:
            return None
    return message, {
        "A": serialize_argument(a),
        "B": serialize_argument(b),
        "C": serialize_argument(c),
        "alpha": str(alpha),
        "beta": str(beta),
    }


def _expected_fail(name: str, provider: SymbolSimilarityProvider) -> bool:
    if name == "nonzero":
        return True
    if name == "syntax_independence":
        return not provider.syntax_independent
    return False


def check_principle(
    name: str,
    config: SimConfig | Sequence[SimConfig],
    params: GeneratorParams,
    n: int,
) -> PrincipleReport:
    """Run ``n`` constructed cases of one principle; configs cycle per case."""
    if name not in PRINCIPLES:
        raise ValueError(f"unknown principle {name!r}; choose from {PRINCIPLES}")
    configs = [config] if isinstance(config, SimConfig) else list(config)
    report = PrincipleReport(
        principle=name,
        cases=n,
        expected_fail=_expected_fail(name, configs[0].provider),
    )

    for index in range(n):
        case_seed = random.Random(f"{params.seed}:{name}:{index}").getrandbits(48)
        rng = random.Random(f"case:{case_seed}")
        cfg = configs[index % len(configs)]
        result = _run_case(name, rng, cfg, params, index)
        if result is not None:
            message, inputs = result
            report.violations.append(Violation(index, case_seed, message, inputs))
    return report


def _run_case(name, rng, cfg, params, index):
    if name == "maximality":
        return _check_maximality(rng, cfg, params)
    if name == "symmetry":
        return _check_symmetry(rng, cfg, params)
    if name == "substitution":
        return _check_substitution(rng, cfg, params)
    if name == "syntax_independence":
        return _check_syntax_independence(rng, cfg, params, constructed=(index == 0))
    if name == "minimality":
        return _check_minimality(rng, cfg, params)
    if name == "nonzero":
        return _check_nonzero(rng, cfg, params, constructed=(index == 0))
    if name.endswith("monotony0") or name.endswith("monotony1"):
        component = "support" if name.startswith("s_") else "claim"
        return _check_monotony(rng, cfg, params, component, int(name[-1]))
    if name.startswith(("s_reinforcement", "c_reinforcement")):
        component = "support" if name.startswith("s_") else "claim"
        return _check_reinforcement(rng, cfg, params, component, name.endswith("_gt"))
    raise AssertionError(name)


def replay_case(
    name: str, case_seed: int, config: SimConfig, params: GeneratorParams, case_index: int
):
    """Re-run one recorded case; returns the violation or None."""
    rng = random.Random(f"case:{case_seed}")
    return _run_case(name, rng, config, params, case_index)


def run_audit(
    configs: SimConfig | Sequence[SimConfig],
    params: GeneratorParams,
    n: int,
    principles: Sequence[str] | None = None,
) -> AuditReport:
    names = list(principles) if principles else list(PRINCIPLES)
    for p in names:
        if p not in PRINCIPLES:
            raise ValueError(f"unknown principle {p!r}")
    return AuditReport([check_principle(p, configs, params, n) for p in names])
