"""First-order formula and argument ASTs, their text grammar, and a canonical printer.

Grammar (UTF-8 text), loosest-binding first::

    formula  :=  iff
    iff      :=  implies ('<->' iff)?
    implies  :=  disj ('->' implies)?
    disj     :=  conj ('|' conj)*
    conj     :=  unary ('&' unary)*
    unary    :=  '~' unary
              |  ('forall' | 'exists') NAME '.' formula      -- scope extends maximally right
              |  NAME ['(' term (',' term)* ')']
              |  '(' formula ')'
    term     :=  NAME ['(' term (',' term)* ')']

``->`` and ``<->`` are right-associative.  ``True`` and ``False`` are reserved
0-ary atoms.  An identifier in term position is a variable when it is bound by
an enclosing quantifier; any other identifier is a constant, except that an
unbound name shaped like a conventional variable (``x``, ``y``, ``z``,
optionally followed by digits) is rejected as a free variable rather than
silently read as a constant.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Syntax error with the character position and what was expected."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FreeVariableError(ParseError):
    """An unbound variable-shaped identifier occurred in a closed formula."""

    def __init__(self, name: str, position: int):
        super().__init__(f"free variable '{name}'", position)
        self.name = name


class ArgumentFormatError(ValueError):
    """The argument document does not match the expected JSON structure."""


# --- terms ---------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Variable(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Constant(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Function(Term):
    name: str
    args: tuple[Term, ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError("function terms need at least one argument")

    def __str__(self):
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


# --- formulae ------------------------------------------------------------


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    predicate: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


TRUE = Atom("True", ())
FALSE = Atom("False", ())

RESERVED = {"forall", "exists", "True", "False"}

# Unbound identifiers of this shape are presumed to be misspelled quantified
# variables and rejected; everything else unbound is a constant.
_VARIABLE_SHAPED = re.compile(r"[xyz][0-9]*\Z")


def free_variables(f: Formula) -> set[str]:
    """Names occurring as Variable nodes not bound by an enclosing quantifier."""
    out: set[str] = set()

    def walk_term(t: Term, bound: frozenset[str]):
        if isinstance(t, Variable):
            if t.name not in bound:
                out.add(t.name)
        elif isinstance(t, Function):
            for a in t.args:
                walk_term(a, bound)

    def walk(g: Formula, bound: frozenset[str]):
        if isinstance(g, Atom):
            for a in g.args:
                walk_term(a, bound)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, (ForAll, Exists)):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return out


# --- tokenizer -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|[~&|(),.]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.bound: list[str] = []

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def _expect(self, value: str):
        tok = self._peek()
        if tok is None:
            raise ParseError(f"expected {value!r}, found end of input", len(self.text))
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.i += 1

    def parse(self) -> Formula:
        f = self.formula()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return f

    def formula(self) -> Formula:
        left = self.implies()
        tok = self._peek()
        if tok is not None and tok[1] == "<->":
            self.i += 1
            return Iff(left, self.formula())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        tok = self._peek()
        if tok is not None and tok[1] == "->":
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        node = self.conj()
        while (tok := self._peek()) is not None and tok[1] == "|":
            self.i += 1
            node = Or(node, self.conj())
        return node

    def conj(self) -> Formula:
        node = self.unary()
        while (tok := self._peek()) is not None and tok[1] == "&":
            self.i += 1
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        tok = self._peek()
        if tok is None:
            raise ParseError("expected a formula, found end of input", len(self.text))
        kind, value, pos = tok
        if value == "~":
            self.i += 1
            return Not(self.unary())
        if value == "(":
            self.i += 1
            f = self.formula()
            self._expect(")")
            return f
        if value in ("forall", "exists"):
            self.i += 1
            var_tok = self._next()
            if var_tok[0] != "name":
                raise ParseError(f"expected a variable name, found {var_tok[1]!r}", var_tok[2])
            if var_tok[1] in RESERVED:
                raise ParseError(f"{var_tok[1]!r} is reserved and cannot be quantified", var_tok[2])
            self._expect(".")
            self.bound.append(var_tok[1])
            try:
                body = self.formula()
            finally:
                self.bound.pop()
            return ForAll(var_tok[1], body) if value == "forall" else Exists(var_tok[1], body)
        if kind == "name":
            return self.atom()
        raise ParseError(f"expected a formula, found {value!r}", pos)

    def atom(self) -> Formula:
        kind, name, pos = self._next()
        if name in ("forall", "exists"):
            raise ParseError(f"{name!r} is reserved", pos)
        args = self._maybe_args()
        if name in ("True", "False") and args:
            raise ParseError(f"{name!r} is a reserved 0-ary atom", pos)
        return Atom(name, args)

    def _maybe_args(self) -> tuple[Term, ...]:
        tok = self._peek()
        if tok is None or tok[1] != "(":
            return ()
        self.i += 1
        args = [self.term()]
        while (tok := self._peek()) is not None and tok[1] == ",":
            self.i += 1
            args.append(self.term())
        self._expect(")")
        return tuple(args)

    def term(self) -> Term:
        tok = self._next()
        kind, name, pos = tok
        if kind != "name":
            raise ParseError(f"expected a term, found {name!r}", pos)
        if name in RESERVED:
            raise ParseError(f"{name!r} is reserved and cannot be a term", pos)
        args = self._maybe_args()
        if args:
            return Function(name, args)
        if name in self.bound:
            return Variable(name)
        if _VARIABLE_SHAPED.fullmatch(name):
            raise FreeVariableError(name, pos)
        return Constant(name)


def parse_formula(text: str) -> Formula:
    """Parse a closed formula; unbound variable-shaped names are rejected."""
    return _Parser(text).parse()


# --- printer -------------------------------------------------------------

_BINOPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def render(f: Formula) -> str:
    """Fully parenthesized canonical text; ``parse_formula(render(f))`` == ``f``."""
    if isinstance(f, Atom):
        if not f.args:
            return f.predicate
        return f"{f.predicate}({', '.join(str(a) for a in f.args)})"
    if isinstance(f, Not):
        # Atoms render bare and everything else parenthesizes itself, so a
        # plain prefix is unambiguous (including ~~ chains).
        return f"~{render(f.body)}"
    if isinstance(f, (And, Or, Implies, Iff)):
        return f"({render(f.left)} {_BINOPS[type(f)]} {render(f.right)})"
    if isinstance(f, ForAll):
        return f"(forall {f.var}. {render(f.body)})"
    if isinstance(f, Exists):
        return f"(exists {f.var}. {render(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# --- arguments -----------------------------------------------------------


@dataclass(frozen=True)
class Argument:
    """A premise list (support) paired with a claim, all closed formulae."""

    id: str
    premises: tuple[Formula, ...]
    claim: Formula

    @property
    def is_trivial(self) -> bool:
        return not self.premises and self.claim == TRUE


def parse_argument(document: str) -> Argument:
    """Parse an argument file: JSON with ``id``, ``premises``, ``claim``."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise ArgumentFormatError(f"not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ArgumentFormatError("argument document must be a JSON object")
    missing = {"id", "premises", "claim"} - data.keys()
    if missing:
        raise ArgumentFormatError(f"missing fields: {', '.join(sorted(missing))}")
    if not isinstance(data["id"], str) or not data["id"]:
        raise ArgumentFormatError("'id' must be a non-empty string")
    if not isinstance(data["premises"], list):
        raise ArgumentFormatError("'premises' must be an array of formula strings")
    if not isinstance(data["claim"], str):
        raise ArgumentFormatError("'claim' must be a formula string")

    premises = []
    for i, text in enumerate(data["premises"]):
        if not isinstance(text, str):
            raise ArgumentFormatError(f"premise {i} is not a string")
        try:
            premises.append(parse_formula(text))
        except ParseError as e:
            raise ParseError(f"premise {i}: {e.args[0]}", e.position) from e
    try:
        claim = parse_formula(data["claim"])
    except ParseError as e:
        raise ParseError(f"claim: {e.args[0]}", e.position) from e

    if not premises and claim != TRUE:
        raise ArgumentFormatError(
            "an argument with no premises must have the trivial claim 'True'"
        )
    return Argument(data["id"], tuple(premises), claim)
