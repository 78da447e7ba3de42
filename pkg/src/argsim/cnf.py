"""Compilation of formulae and arguments into normalized quantifier-free CNF.

The pipeline: eliminate ``->``/``<->``, push negation inward, standardize
bound variables apart, replace existentials with fresh ``sk<N>`` terms (a
constant when no universal is in scope, else a function of the enclosing
universal variables), drop universals, distribute disjunction over
conjunction, fold negation into the predicate name (``~P`` becomes ``notP``),
and normalize by sorting and deduplicating literals and clauses.

Tautological clauses are kept: deleting them would silently change the inputs
of every downstream similarity computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    And,
    Argument,
    Atom,
    Constant,
    Exists,
    ForAll,
    Formula,
    Function,
    Iff,
    Implies,
    Not,
    Or,
    Term,
    Variable,
    free_variables,
)

NOT_PREFIX = "not"


@dataclass(frozen=True)
class Literal:
    """A polarity-folded predicate applied to a term vector.

    Negation exists only as the ``not`` name prefix; there is no sign field.
    """

    predicate: str
    args: tuple[Term, ...] = ()

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(str(a) for a in self.args)})"

    def symbols(self) -> list[str]:
        """The predicate followed by the rendered top-level terms.

        A compound term like ``sk0(x0)`` counts as one symbol: similarity
        and weighting treat top-level terms as atomic comparison units.
        """
        return [self.predicate, *(str(a) for a in self.args)]


@dataclass(frozen=True)
class Clause:
    """A non-empty disjunction of literals, sorted and duplicate-free."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        lits = tuple(sorted(set(self.literals), key=str))
        if not lits:
            raise ValueError("a clause must contain at least one literal")
        object.__setattr__(self, "literals", lits)

    def __str__(self):
        return " | ".join(str(l) for l in self.literals)

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)


@dataclass(frozen=True)
class ClauseSet:
    """A possibly-empty set of clauses, sorted and duplicate-free."""

    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        cs = tuple(sorted(set(self.clauses), key=str))
        object.__setattr__(self, "clauses", cs)

    def __str__(self):
        return "\n".join(str(c) for c in self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def symbols(self) -> set[str]:
        return {s for c in self.clauses for l in c for s in l.symbols()}


TRUE_CLAUSE_SET = ClauseSet((Clause((Literal("True"),)),))


@dataclass(frozen=True)
class CompiledArgument:
    """An argument with support and claim compiled to clause sets."""

    id: str
    support: ClauseSet
    claim: ClauseSet

    @property
    def is_trivial(self) -> bool:
        return len(self.support) == 0 and self.claim == TRUE_CLAUSE_SET

    @property
    def claim_is_multiclause(self) -> bool:
        """Advisory: a compiled claim with several clauses may not be minimal."""
        return len(self.claim) > 1


@dataclass
class SkolemNamer:
    """Explicit fresh-name state so compilation runs are reproducible."""

    prefix: str = "sk"
    counter: int = 0

    def next(self) -> str:
        name = f"{self.prefix}{self.counter}"
        self.counter += 1
        return name


def fold_polarity(literal: Formula) -> Literal:
    """Fold a (possibly negated) atom into a single predicate name.

    ``~P(a, b)`` becomes ``notP(a, b)``; positive atoms are unchanged.
    """
    if isinstance(literal, Not):
        if not isinstance(literal.body, Atom):
            raise ValueError("negation must be applied directly to an atom")
        return Literal(NOT_PREFIX + literal.body.predicate, literal.body.args)
    if isinstance(literal, Atom):
        return Literal(literal.predicate, literal.args)
    raise ValueError(f"not a literal: {literal!r}")


# --- pipeline stages ------------------------------------------------------


def _eliminate_arrows(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(_eliminate_arrows(f.body))
    if isinstance(f, And):
        return And(_eliminate_arrows(f.left), _eliminate_arrows(f.right))
    if isinstance(f, Or):
        return Or(_eliminate_arrows(f.left), _eliminate_arrows(f.right))
    if isinstance(f, Implies):
        return Or(Not(_eliminate_arrows(f.left)), _eliminate_arrows(f.right))
    if isinstance(f, Iff):
        left = _eliminate_arrows(f.left)
        right = _eliminate_arrows(f.right)
        return And(Or(Not(left), right), Or(Not(right), left))
    if isinstance(f, ForAll):
        return ForAll(f.var, _eliminate_arrows(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, _eliminate_arrows(f.body))
    raise TypeError(f"not a formula: {f!r}")


def _nnf(f: Formula) -> Formula:
    """Push negations down to atoms (input free of -> and <->)."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_nnf(f.left), _nnf(f.right))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, _nnf(f.body))
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Atom):
            return f
        if isinstance(g, Not):
            return _nnf(g.body)
        if isinstance(g, And):
            return Or(_nnf(Not(g.left)), _nnf(Not(g.right)))
        if isinstance(g, Or):
            return And(_nnf(Not(g.left)), _nnf(Not(g.right)))
        if isinstance(g, ForAll):
            return Exists(g.var, _nnf(Not(g.body)))
        if isinstance(g, Exists):
            return ForAll(g.var, _nnf(Not(g.body)))
    raise TypeError(f"not an arrow-free formula: {f!r}")


def _standardize_apart(f: Formula) -> Formula:
    """Give every quantifier a binder name distinct from all previous ones."""
    seen: set[str] = set()

    def fresh(name: str) -> str:
        k = 2
        while f"{name}_{k}" in seen:
            k += 1
        return f"{name}_{k}"

    def walk_term(t: Term, env: dict[str, str]) -> Term:
        if isinstance(t, Variable):
            return Variable(env.get(t.name, t.name))
        if isinstance(t, Function):
            return Function(t.name, tuple(walk_term(a, env) for a in t.args))
        return t

    def walk(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.predicate, tuple(walk_term(a, env) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.body, env))
        if isinstance(g, (And, Or)):
            return type(g)(walk(g.left, env), walk(g.right, env))
        if isinstance(g, (ForAll, Exists)):
            name = g.var if g.var not in seen else fresh(g.var)
            seen.add(name)
            return type(g)(name, walk(g.body, {**env, g.var: name}))
        raise TypeError(f"not an NNF formula: {g!r}")

    return walk(f, {})


def _skolemize(f: Formula, namer: SkolemNamer) -> Formula:
    """Eliminate existentials and drop universals (input standardized NNF)."""

    def subst_term(t: Term, env: dict[str, Term]) -> Term:
        if isinstance(t, Variable):
            return env.get(t.name, t)
        if isinstance(t, Function):
            return Function(t.name, tuple(subst_term(a, env) for a in t.args))
        return t

    def walk(g: Formula, universals: tuple[Variable, ...], env: dict[str, Term]) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.predicate, tuple(subst_term(a, env) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.body, universals, env))
        if isinstance(g, (And, Or)):
            return type(g)(walk(g.left, universals, env), walk(g.right, universals, env))
        if isinstance(g, ForAll):
            return walk(g.body, universals + (Variable(g.var),), env)
        if isinstance(g, Exists):
            name = namer.next()
            witness: Term = Function(name, universals) if universals else Constant(name)
            return walk(g.body, universals, {**env, g.var: witness})
        raise TypeError(f"not an NNF formula: {g!r}")

    return walk(f, (), {})


def _distribute(f: Formula) -> list[list[Formula]]:
    """Quantifier-free NNF to a list of clauses (lists of signed atoms)."""
    if isinstance(f, (Atom, Not)):
        return [[f]]
    if isinstance(f, And):
        return _distribute(f.left) + _distribute(f.right)
    if isinstance(f, Or):
        left = _distribute(f.left)
        right = _distribute(f.right)
        return [cl + cr for cl in left for cr in right]
    raise TypeError(f"not a quantifier-free NNF formula: {f!r}")


def compile_formula(f: Formula, skolem_namer: SkolemNamer | None = None) -> ClauseSet:
    """Compile one sentence to a normalized quantifier-free clause set."""
    if free_variables(f):
        raise ValueError(f"not a sentence, free variables: {sorted(free_variables(f))}")
    namer = skolem_namer if skolem_namer is not None else SkolemNamer()
    matrix = _skolemize(_standardize_apart(_nnf(_eliminate_arrows(f))), namer)
    clauses = [Clause(tuple(fold_polarity(l) for l in lits)) for lits in _distribute(matrix)]
    return ClauseSet(tuple(clauses))


# --- clause set assembly with canonical naming ----------------------------

_PLACEHOLDER = "\x00sk"


def _map_clause(clause: Clause, var_map: dict[str, str], name_map: dict[str, str]) -> Clause:
    def walk(t: Term) -> Term:
        if isinstance(t, Variable):
            return Variable(var_map.get(t.name, t.name))
        if isinstance(t, Constant):
            return Constant(name_map.get(t.name, t.name))
        if isinstance(t, Function):
            return Function(name_map.get(t.name, t.name), tuple(walk(a) for a in t.args))
        raise TypeError(f"not a term: {t!r}")

    return Clause(tuple(Literal(l.predicate, tuple(walk(a) for a in l.args)) for l in clause))


@dataclass
class _CompiledFormula:
    clauses: tuple[Clause, ...]
    variables: list[str] = field(default_factory=list)
    skolems: list[str] = field(default_factory=list)
    key: str = ""

    def __post_init__(self):
        seen_v: dict[str, int] = {}
        seen_s: dict[str, int] = {}

        def anon(t: Term) -> str:
            if isinstance(t, Variable):
                idx = seen_v.setdefault(t.name, len(seen_v))
                return f"\x01v{idx}\x01"
            if isinstance(t, Constant):
                if t.name.startswith(_PLACEHOLDER):
                    idx = seen_s.setdefault(t.name, len(seen_s))
                    return f"\x01s{idx}\x01"
                return t.name
            assert isinstance(t, Function)
            name = t.name
            if name.startswith(_PLACEHOLDER):
                idx = seen_s.setdefault(name, len(seen_s))
                name = f"\x01s{idx}\x01"
            return f"{name}({', '.join(anon(a) for a in t.args)})"

        parts = []
        for c in self.clauses:
            lits = [
                l.predicate + ("" if not l.args else f"({', '.join(anon(a) for a in l.args)})")
                for l in c
            ]
            parts.append(" | ".join(lits))
        self.key = "\n".join(parts)
        self.variables = [v for v, _ in sorted(seen_v.items(), key=lambda kv: kv[1])]
        self.skolems = [s for s, _ in sorted(seen_s.items(), key=lambda kv: kv[1])]


def compile_set(formulas: list[Formula]) -> ClauseSet:
    """Compile a set of sentences into one clause set with clash-free naming.

    Variables are renamed ``x0, x1, ...`` and Skolem symbols ``sk0, sk1, ...``
    in an order derived from the name-anonymized form of each formula's
    compilation, not from the position of the formula in the input.  Equal
    inputs in any order therefore produce byte-equal outputs, which is what
    makes compiled-set union behave like a true set union.
    """
    compiled = []
    for f in formulas:
        cs = compile_formula(f, SkolemNamer(prefix=_PLACEHOLDER))
        compiled.append(_CompiledFormula(cs.clauses))
    compiled.sort(key=lambda c: c.key)

    out: list[Clause] = []
    var_n = 0
    sk_n = 0
    for item in compiled:
        var_map = {}
        for v in item.variables:
            var_map[v] = f"x{var_n}"
            var_n += 1
        sk_map = {}
        for s in item.skolems:
            sk_map[s] = f"sk{sk_n}"
            sk_n += 1
        out.extend(_map_clause(c, var_map, sk_map) for c in item.clauses)
    return ClauseSet(tuple(out))


def compile_argument(a: Argument) -> CompiledArgument:
    """Compile support and claim; minimality of the result is not checked."""
    return CompiledArgument(
        id=a.id,
        support=compile_set(list(a.premises)),
        claim=compile_set([a.claim]),
    )


# --- equality up to variable renumbering ----------------------------------


def renumber_clause(clause: Clause) -> str:
    """Render with variables relabeled ``v0, v1, ...`` left to right."""
    mapping: dict[str, int] = {}

    def walk(t: Term) -> str:
        if isinstance(t, Variable):
            idx = mapping.setdefault(t.name, len(mapping))
            return f"v{idx}"
        if isinstance(t, Constant):
            return t.name
        assert isinstance(t, Function)
        return f"{t.name}({', '.join(walk(a) for a in t.args)})"

    lits = []
    for l in clause:
        lits.append(l.predicate + ("" if not l.args else f"({', '.join(walk(a) for a in l.args)})"))
    return " | ".join(lits)


def _renumbered(cs: ClauseSet) -> tuple[str, ...]:
    return tuple(sorted(renumber_clause(c) for c in cs))


def bijective_equal(a: CompiledArgument, b: CompiledArgument) -> bool:
    """Component-wise equality of normalized clause sets, ignoring variable names."""
    return _renumbered(a.support) == _renumbered(b.support) and _renumbered(
        a.claim
    ) == _renumbered(b.claim)
