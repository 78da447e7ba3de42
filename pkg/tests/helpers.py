"""Shared test helpers: independent oracles and seeded generators.

The oracles here deliberately re-derive results from first principles
(truth tables, exact rational set arithmetic) rather than reusing any of
the library's computation paths.
"""

from __future__ import annotations

import random
from fractions import Fraction

from argsim.cnf import ClauseSet, Literal
from argsim.syntax import (
    And,
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
    render,
)

# --- truth-table oracle (quantifier-free fragment) -------------------------


def formula_atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        if f.predicate in ("True", "False"):
            return set()
        return {render(f)}
    if isinstance(f, Not):
        return formula_atoms(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return formula_atoms(f.left) | formula_atoms(f.right)
    raise ValueError(f"not quantifier-free: {f!r}")


def eval_formula(f: Formula, assignment: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        if f.predicate == "True":
            return True
        if f.predicate == "False":
            return False
        return assignment[render(f)]
    if isinstance(f, Not):
        return not eval_formula(f.body, assignment)
    if isinstance(f, And):
        return eval_formula(f.left, assignment) and eval_formula(f.right, assignment)
    if isinstance(f, Or):
        return eval_formula(f.left, assignment) or eval_formula(f.right, assignment)
    if isinstance(f, Implies):
        return (not eval_formula(f.left, assignment)) or eval_formula(f.right, assignment)
    if isinstance(f, Iff):
        return eval_formula(f.left, assignment) == eval_formula(f.right, assignment)
    raise ValueError(f"not quantifier-free: {f!r}")


def _literal_atom_key(lit: Literal) -> tuple[str, bool]:
    """(rendered positive atom, positive?) for ground literals."""
    if lit.predicate.startswith("not"):
        positive = Literal(lit.predicate[3:], lit.args)
        return str(positive), False
    return str(lit), True


def eval_clause_set(cs: ClauseSet, assignment: dict[str, bool]) -> bool:
    for clause in cs:
        satisfied = False
        for lit in clause:
            key, positive = _literal_atom_key(lit)
            if key == "True":
                value = True
            elif key == "False":
                value = False
            else:
                value = assignment[key]
            if value == positive:
                satisfied = True
                break
        if not satisfied:
            return False
    return True


def clause_set_atoms(cs: ClauseSet) -> set[str]:
    out = set()
    for clause in cs:
        for lit in clause:
            key, _ = _literal_atom_key(lit)
            if key not in ("True", "False"):
                out.add(key)
    return out


def propositionally_equivalent(f: Formula, cs: ClauseSet) -> bool:
    atoms = sorted(formula_atoms(f) | clause_set_atoms(cs))
    assert len(atoms) <= 10, "truth table too large"
    for bits in range(2 ** len(atoms)):
        assignment = {a: bool(bits >> i & 1) for i, a in enumerate(atoms)}
        if eval_formula(f, assignment) != eval_clause_set(cs, assignment):
            return False
    return True


# --- exact crisp set similarity oracle --------------------------------------


def set_jaccard(s1: frozenset, s2: frozenset) -> Fraction:
    if not s1 and not s2:
        return Fraction(1)
    return Fraction(len(s1 & s2), len(s1 | s2))


def set_dice(s1: frozenset, s2: frozenset) -> Fraction:
    if not s1 and not s2:
        return Fraction(1)
    return Fraction(2 * len(s1 & s2), len(s1) + len(s2))


# --- seeded random formula generation ---------------------------------------

PREDICATES = ["P", "Q", "R", "Likes", "Near"]
CONSTANTS = ["a", "b", "dog", "zoo"]
FUNCTIONS = ["f", "g"]


def random_term(rng: random.Random, bound: tuple[str, ...], depth: int = 0) -> Term:
    roll = rng.random()
    if bound and roll < 0.4:
        return Variable(rng.choice(bound))
    if roll < 0.5 and depth == 0:
        return Function(rng.choice(FUNCTIONS), (random_term(rng, bound, 1),))
    return Constant(rng.choice(CONSTANTS))


def random_formula(
    rng: random.Random,
    depth: int,
    bound: tuple[str, ...] = (),
    quantifiers: bool = True,
) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        arity = rng.randrange(3)
        return Atom(
            rng.choice(PREDICATES), tuple(random_term(rng, bound) for _ in range(arity))
        )
    kinds = ["not", "and", "or", "implies", "iff"]
    if quantifiers:
        kinds += ["forall", "exists"]
    kind = rng.choice(kinds)
    if kind == "not":
        return Not(random_formula(rng, depth - 1, bound, quantifiers))
    if kind in ("forall", "exists"):
        var = f"{rng.choice('xyz')}{rng.randrange(3)}"
        body = random_formula(rng, depth - 1, bound + (var,), quantifiers)
        return ForAll(var, body) if kind == "forall" else Exists(var, body)
    left = random_formula(rng, depth - 1, bound, quantifiers)
    right = random_formula(rng, depth - 1, bound, quantifiers)
    node = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
    return node(left, right)


def random_sentence(rng: random.Random, max_depth: int = 6) -> Formula:
    return random_formula(rng, rng.randint(1, max_depth))


def random_ground_formula(rng: random.Random, max_depth: int = 5) -> Formula:
    return random_formula(rng, rng.randint(1, max_depth), quantifiers=False)


# --- bijectively-equivalent argument variants --------------------------------


def _substitute_var(f: Formula, old: str, new: str) -> Formula:
    def walk_term(t: Term) -> Term:
        if isinstance(t, Variable):
            return Variable(new) if t.name == old else t
        if isinstance(t, Function):
            return Function(t.name, tuple(walk_term(a) for a in t.args))
        return t

    if isinstance(f, Atom):
        return Atom(f.predicate, tuple(walk_term(a) for a in f.args))
    if isinstance(f, Not):
        return Not(_substitute_var(f.body, old, new))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(_substitute_var(f.left, old, new), _substitute_var(f.right, old, new))
    if isinstance(f, (ForAll, Exists)):
        if f.var == old:
            return f
        return type(f)(f.var, _substitute_var(f.body, old, new))
    raise TypeError(f)


def syntactic_variant(f: Formula, rng: random.Random, _fresh: list[int] | None = None) -> Formula:
    """An equivalent rewrite: commuted junctions, double negation, unfolded
    implication, renamed binders.  Compiles to the same clause set."""
    fresh_counter = _fresh if _fresh is not None else [0]

    def next_fresh() -> str:
        fresh_counter[0] += 1
        return f"w{fresh_counter[0]}"

    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        body = syntactic_variant(f.body, rng, fresh_counter)
        if rng.random() < 0.3:
            return Not(Not(Not(body)))
        return Not(body)
    if isinstance(f, (And, Or)):
        left = syntactic_variant(f.left, rng, fresh_counter)
        right = syntactic_variant(f.right, rng, fresh_counter)
        if rng.random() < 0.5:
            return type(f)(right, left)
        return type(f)(left, right)
    if isinstance(f, Implies):
        left = syntactic_variant(f.left, rng, fresh_counter)
        right = syntactic_variant(f.right, rng, fresh_counter)
        if rng.random() < 0.5:
            return Or(Not(left), right)
        return Implies(left, right)
    if isinstance(f, Iff):
        return Iff(
            syntactic_variant(f.left, rng, fresh_counter),
            syntactic_variant(f.right, rng, fresh_counter),
        )
    if isinstance(f, (ForAll, Exists)):
        body = syntactic_variant(f.body, rng, fresh_counter)
        if rng.random() < 0.5:
            fresh = next_fresh()
            return type(f)(fresh, _substitute_var(body, f.var, fresh))
        return type(f)(f.var, body)
    raise TypeError(f)
