"""Abstract syntax, parser, printer and validation for first-order ASPIC+ theories.

Surface grammar (``#`` starts a comment, every statement ends with ``.``)::

    fact       := "fact" atom "."
    assumption := "assume" atom "."
    strict     := atom "<-" atom-list "."
    defeasible := atom ":" atom "<=" atom-list "."     # name : head <= body
    contrary   := "contrary" atom ":" atom-list "."    # subject : contraries
    atom       := ident | ident "(" term {"," term} ")"

Variables start with an uppercase letter, constants are lowercase
identifiers or unsigned integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

RESERVED_PREFIX = "__"

_VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
_CONST_RE = re.compile(r"(?:[a-z][A-Za-z0-9_]*|[0-9]+)\Z")
_PRED_RE = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Raised on malformed theory text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True, order=True)
class Term:
    name: str

    def __post_init__(self):
        if not (_VAR_RE.match(self.name) or _CONST_RE.match(self.name)):
            raise ValueError(f"invalid term {self.name!r}")

    @property
    def is_variable(self) -> bool:
        return self.name[0].isupper()

    @property
    def kind(self) -> str:
        return "variable" if self.is_variable else "constant"

    def __str__(self) -> str:
        return self.name


Substitution = Mapping[Term, Term]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    def variables(self) -> frozenset[Term]:
        return frozenset(t for t in self.args if t.is_variable)

    def constants(self) -> frozenset[Term]:
        return frozenset(t for t in self.args if not t.is_variable)

    def substitute(self, sub: Substitution) -> "Atom":
        if not sub:
            return self
        return Atom(self.predicate, tuple(sub.get(t, t) for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"

    def __lt__(self, other: "Atom") -> bool:
        return str(self) < str(other)


def atom(text: str) -> Atom:
    """Parse a single atom, e.g. ``atom("f(X,1)")``."""
    p = _Parser(text)
    a = p.atom()
    p.expect("EOF")
    return a


def match(pattern: Atom, target: Atom, binding: Substitution | None = None) -> dict[Term, Term] | None:
    """One-way matching: bind variables of ``pattern`` so that it equals ``target``.

    Terms of ``target`` are treated as opaque (variables in the target are not
    bound).  Returns ``None`` if no such binding exists.
    """
    if pattern.predicate != target.predicate or pattern.arity != target.arity:
        return None
    sub = dict(binding) if binding else {}
    for p, t in zip(pattern.args, target.args):
        if p.is_variable:
            bound = sub.get(p)
            if bound is None:
                sub[p] = t
            elif bound != t:
                return None
        elif p != t:
            return None
    return sub


def _atoms_text(atoms: Iterable[Atom]) -> str:
    return ", ".join(sorted(str(a) for a in atoms))


@dataclass(frozen=True)
class StrictRule:
    body: frozenset[Atom]
    head: Atom

    def atoms(self) -> Iterator[Atom]:
        yield self.head
        yield from self.body

    def variables(self) -> frozenset[Term]:
        return frozenset(v for a in self.atoms() for v in a.variables())

    def body_variables(self) -> frozenset[Term]:
        return frozenset(v for a in self.body for v in a.variables())

    def substitute(self, sub: Substitution) -> "StrictRule":
        return StrictRule(frozenset(a.substitute(sub) for a in self.body), self.head.substitute(sub))

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    def __str__(self) -> str:
        return f"{self.head} <- {_atoms_text(self.body)}."


@dataclass(frozen=True)
class DefeasibleRule:
    name: Atom
    body: frozenset[Atom]
    head: Atom

    def atoms(self) -> Iterator[Atom]:
        yield self.name
        yield self.head
        yield from self.body

    def variables(self) -> frozenset[Term]:
        return frozenset(v for a in self.atoms() for v in a.variables())

    def body_variables(self) -> frozenset[Term]:
        return frozenset(v for a in self.body for v in a.variables())

    def substitute(self, sub: Substitution) -> "DefeasibleRule":
        return DefeasibleRule(
            self.name.substitute(sub),
            frozenset(a.substitute(sub) for a in self.body),
            self.head.substitute(sub),
        )

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    @property
    def defeasible_elements(self) -> tuple[Atom, Atom]:
        return (self.name, self.head)

    def __str__(self) -> str:
        return f"{self.name}: {self.head} <= {_atoms_text(self.body)}."


Rule = Union[StrictRule, DefeasibleRule]


@dataclass(frozen=True)
class ContraryExpr:
    subject: Atom
    contraries: frozenset[Atom]

    def atoms(self) -> Iterator[Atom]:
        yield self.subject
        yield from self.contraries

    def variables(self) -> frozenset[Term]:
        return frozenset(v for a in self.atoms() for v in a.variables())

    def substitute(self, sub: Substitution) -> "ContraryExpr":
        return ContraryExpr(self.subject.substitute(sub), frozenset(a.substitute(sub) for a in self.contraries))

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    def __str__(self) -> str:
        return f"contrary {self.subject}: {_atoms_text(self.contraries)}."


@dataclass(frozen=True)
class Theory:
    contraries: frozenset[ContraryExpr] = frozenset()
    strict: frozenset[StrictRule] = frozenset()
    defeasible: frozenset[DefeasibleRule] = frozenset()
    facts: frozenset[Atom] = frozenset()
    assumptions: frozenset[Atom] = frozenset()
    # element -> (line, column) of its first declaration; informational only
    positions: Mapping[object, tuple[int, int]] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for name in ("contraries", "strict", "defeasible", "facts", "assumptions"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))

    @property
    def rules(self) -> frozenset[Rule]:
        return self.strict | self.defeasible

    def atoms(self) -> Iterator[Atom]:
        for c in self.contraries:
            yield from c.atoms()
        for r in self.strict:
            yield from r.atoms()
        for r in self.defeasible:
            yield from r.atoms()
        yield from self.facts
        yield from self.assumptions

    def predicates(self) -> frozenset[str]:
        return frozenset(a.predicate for a in self.atoms())

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    def union(self, other: "Theory") -> "Theory":
        return Theory(
            self.contraries | other.contraries,
            self.strict | other.strict,
            self.defeasible | other.defeasible,
            self.facts | other.facts,
            self.assumptions | other.assumptions,
        )

    def __str__(self) -> str:
        return format_theory(self)


class GroundTheory(Theory):
    """A theory in which every atom is ground."""

    def __post_init__(self):
        super().__post_init__()
        for a in self.atoms():
            if not a.is_ground:
                raise ValueError(f"non-ground atom {a} in ground theory")

    @classmethod
    def of(cls, theory: Theory) -> "GroundTheory":
        return cls(theory.contraries, theory.strict, theory.defeasible, theory.facts, theory.assumptions)


def format_theory(theory: Theory) -> str:
    """Canonical text: contraries, strict, defeasible, assumptions, facts; each block sorted."""
    lines: list[str] = []
    lines += sorted(str(c) for c in theory.contraries)
    lines += sorted(str(r) for r in theory.strict)
    lines += sorted(str(r) for r in theory.defeasible)
    lines += sorted(f"assume {a}." for a in theory.assumptions)
    lines += sorted(f"fact {a}." for a in theory.facts)
    return "".join(line + "\n" for line in lines)


def herbrand_universe(theory: Theory) -> frozenset[Term]:
    """All constants occurring anywhere in ``theory``."""
    return frozenset(t for a in theory.atoms() for t in a.args if not t.is_variable)


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>[ \t\r]+)
  | (?P<NL>\n)
  | (?P<COMMENT>\#[^\n]*)
  | (?P<ARROW><-)
  | (?P<DARROW><=)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*|[0-9]+)
  | (?P<PUNCT>[(),.:])
    """,
    re.VERBOSE,
)

_KEYWORDS = ("fact", "assume", "contrary")


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "NL":
            line += 1
            line_start = m.end()
        elif kind in ("PUNCT", "ARROW", "DARROW"):
            tokens.append(_Token(m.group(), m.group(), line, pos - line_start + 1))
        elif kind not in ("WS", "COMMENT"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.seen: list[tuple[Atom, _Token]] = []

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def expect(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.i += 1
        return tok

    def term(self) -> Term:
        tok = self.expect("IDENT")
        if not (_VAR_RE.match(tok.text) or _CONST_RE.match(tok.text)):
            raise self.error(f"invalid term {tok.text!r}", tok)
        return Term(tok.text)

    def atom(self) -> Atom:
        tok = self.expect("IDENT")
        if not _PRED_RE.match(tok.text) or tok.text[0].isdigit():
            raise self.error(f"invalid predicate name {tok.text!r}", tok)
        if tok.text.startswith(RESERVED_PREFIX):
            raise self.error(f"predicate {tok.text!r} uses the reserved prefix {RESERVED_PREFIX!r}", tok)
        args: list[Term] = []
        if self.tok.kind == "(":
            self.i += 1
            args.append(self.term())
            while self.tok.kind == ",":
                self.i += 1
                args.append(self.term())
            self.expect(")")
        a = Atom(tok.text, tuple(args))
        self.seen.append((a, tok))
        return a

    def atom_list(self) -> list[Atom]:
        atoms = [self.atom()]
        while self.tok.kind == ",":
            self.i += 1
            atoms.append(self.atom())
        return atoms


def parse_theory(text: str) -> Theory:
    """Parse theory text into a :class:`Theory`.

    Raises :class:`ParseError` on syntax errors, reserved predicate names and
    predicates used with more than one arity.
    """
    p = _Parser(text)
    contraries: list[ContraryExpr] = []
    strict: list[StrictRule] = []
    defeasible: list[DefeasibleRule] = []
    facts: list[Atom] = []
    assumptions: list[Atom] = []
    positions: dict[object, tuple[int, int]] = {}
    arities: dict[str, int] = {}

    def note_arities() -> None:
        for a, tok in p.seen:
            known = arities.setdefault(a.predicate, a.arity)
            if known != a.arity:
                raise ParseError(
                    f"predicate {a.predicate!r} used with arity {a.arity} but previously with arity {known}",
                    tok.line,
                    tok.column,
                )
        p.seen.clear()

    while p.tok.kind != "EOF":
        first = p.tok
        pos = (first.line, first.column)
        if first.kind == "IDENT" and first.text in _KEYWORDS and p.peek().kind == "IDENT":
            p.i += 1
            subject = p.atom()
            if first.text == "contrary":
                p.expect(":")
                elem: object = ContraryExpr(subject, frozenset(p.atom_list()))
                contraries.append(elem)
            elif first.text == "fact":
                elem = subject
                facts.append(subject)
            else:
                elem = subject
                assumptions.append(subject)
        else:
            head = p.atom()
            if p.tok.kind == "<-":
                p.i += 1
                elem = StrictRule(frozenset(p.atom_list()), head)
                strict.append(elem)
            elif p.tok.kind == ":":
                p.i += 1
                concl = p.atom()
                p.expect("<=")
                elem = DefeasibleRule(head, frozenset(p.atom_list()), concl)
                defeasible.append(elem)
            else:
                raise p.error(f"expected '<-' or ':' after {head}, found {p.tok.text or 'end of input'!r}")
        p.expect(".")
        note_arities()
        positions.setdefault(elem, pos)

    return Theory(
        frozenset(contraries),
        frozenset(strict),
        frozenset(defeasible),
        frozenset(facts),
        frozenset(assumptions),
        positions=positions,
    )


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    element: object
    message: str
    position: tuple[int, int] | None = None

    def __str__(self) -> str:
        where = f"{self.position[0]}:{self.position[1]}: " if self.position else ""
        return f"{where}{self.kind}: {self.message}"


def validate(theory: Theory) -> list[Violation]:
    """Return every well-formedness violation of ``theory`` (empty list when valid)."""
    out: list[Violation] = []

    def report(kind: str, element: object, message: str) -> None:
        out.append(Violation(kind, element, message, theory.positions.get(element)))

    arities: dict[str, int] = {}
    for a in sorted(theory.atoms(), key=str):
        known = arities.setdefault(a.predicate, a.arity)
        if known != a.arity:
            report("arity-clash", a, f"predicate {a.predicate!r} used with arities {known} and {a.arity}")
    for pred in sorted(theory.predicates()):
        if pred.startswith(RESERVED_PREFIX):
            report("reserved-prefix", pred, f"predicate {pred!r} uses the reserved prefix {RESERVED_PREFIX!r}")

    for a in sorted(theory.facts, key=str):
        if not a.is_ground:
            report("non-ground-fact", a, f"fact {a} is not ground")
    for a in sorted(theory.assumptions, key=str):
        if not a.is_ground:
            report("non-ground-assumption", a, f"assumption {a} is not ground")
    for a in sorted(theory.facts & theory.assumptions, key=str):
        report("fact-assumption-overlap", a, f"{a} is both a fact and an assumption")

    for r in sorted(theory.strict, key=str):
        unbound = r.head.variables() - r.body_variables()
        if unbound:
            report("unsafe-rule", r, f"head variables {_names(unbound)} of '{r}' do not occur in its body")
    name_owner: dict[str, DefeasibleRule] = {}
    for r in sorted(theory.defeasible, key=str):
        bvars = r.body_variables()
        unbound = r.head.variables() - bvars
        if unbound:
            report("unsafe-rule", r, f"head variables {_names(unbound)} of '{r}' do not occur in its body")
        unbound = r.name.variables() - bvars
        if unbound:
            report("unsafe-rule-name", r, f"name variables {_names(unbound)} of '{r}' do not occur in its body")
        other = name_owner.setdefault(r.name.predicate, r)
        if other is not r:
            report("duplicate-rule-name", r, f"name predicate {r.name.predicate!r} is shared by '{other}' and '{r}'")

    for c in sorted(theory.contraries, key=str):
        consts = [t for a in c.atoms() for t in a.args if not t.is_variable]
        if consts:
            report("constant-in-contrary", c, f"constants {_names(consts)} occur in '{c}'")
        unbound = frozenset(v for a in c.contraries for v in a.variables()) - c.subject.variables()
        if unbound:
            report("unsafe-contrary", c, f"variables {_names(unbound)} of '{c}' do not occur in its subject")
        if not c.contraries:
            report("empty-contrary", c, f"'{c}' has no contraries")
    return out


def _names(terms: Iterable[Term]) -> str:
    return ", ".join(sorted({t.name for t in terms}))


class InvalidTheory(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def check_valid(theory: Theory) -> None:
    violations = validate(theory)
    if violations:
        raise InvalidTheory(violations)
