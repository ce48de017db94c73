"""Query model: triple patterns, basic graph patterns, solution mappings.

Includes a parser for a strict subset of SELECT queries: PREFIX
declarations, a projection list, and a WHERE block of dot-separated
triple patterns. No FILTER/OPTIONAL/UNION, no property paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import ParseError
from .ntriples import TermScanner
from .rdf import Iri, Literal, RDF_TYPE, Term, serialize_term

_VAR_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PNAME_PREFIX = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_PNAME_LOCAL = re.compile(r"[A-Za-z0-9_\-]*")


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __post_init__(self):
        if not _VAR_NAME.fullmatch(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")


PatternTerm = Union[Term, Variable]


def serialize_pattern_term(term: PatternTerm) -> str:
    if isinstance(term, Variable):
        return f"?{term.name}"
    return serialize_term(term)


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("pattern subject cannot be a literal")
        if not isinstance(self.predicate, (Variable, Iri)):
            raise ValueError("pattern predicate must be a variable or an IRI")

    def variables(self) -> set[Variable]:
        return {t for t in (self.subject, self.predicate, self.object) if isinstance(t, Variable)}

    def __str__(self) -> str:
        return (
            f"{serialize_pattern_term(self.subject)} "
            f"{serialize_pattern_term(self.predicate)} "
            f"{serialize_pattern_term(self.object)}"
        )


@dataclass(frozen=True)
class BasicGraphPattern:
    patterns: Tuple[TriplePattern, ...]
    projection: Tuple[Variable, ...]

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("basic graph pattern must contain at least one triple pattern")
        seen: set[Variable] = set()
        for tp in self.patterns:
            seen |= tp.variables()
        for var in self.projection:
            if var not in seen:
                raise ValueError(f"projected variable ?{var.name} does not occur in any pattern")

    def variables(self) -> set[Variable]:
        out: set[Variable] = set()
        for tp in self.patterns:
            out |= tp.variables()
        return out


class SolutionMapping:
    """An immutable, hashable binding of variables to terms."""

    __slots__ = ("_items",)

    def __init__(self, bindings: Union[Mapping[Variable, Term], Iterable[tuple[Variable, Term]]] = ()):
        if isinstance(bindings, Mapping):
            pairs = bindings.items()
        else:
            pairs = tuple(bindings)
        self._items: tuple[tuple[Variable, Term], ...] = tuple(
            sorted(pairs, key=lambda kv: kv[0].name)
        )

    def __getitem__(self, var: Variable) -> Term:
        for v, t in self._items:
            if v == var:
                return t
        raise KeyError(var)

    def get(self, var: Variable) -> Optional[Term]:
        for v, t in self._items:
            if v == var:
                return t
        return None

    def __contains__(self, var: Variable) -> bool:
        return any(v == var for v, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Variable]:
        return iter(v for v, _ in self._items)

    def items(self) -> tuple[tuple[Variable, Term], ...]:
        return self._items

    def variables(self) -> set[Variable]:
        return {v for v, _ in self._items}

    def restrict(self, variables: Iterable[Variable]) -> "SolutionMapping":
        keep = set(variables)
        return SolutionMapping((v, t) for v, t in self._items if v in keep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SolutionMapping):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"?{v.name}={serialize_term(t)}" for v, t in self._items)
        return f"{{{inner}}}"

    def sort_key(self) -> tuple[tuple[str, str], ...]:
        return tuple((v.name, serialize_term(t)) for v, t in self._items)


EMPTY_MAPPING = SolutionMapping()


def substitute(tp: TriplePattern, mapping: SolutionMapping) -> TriplePattern:
    """Replace every variable of tp that is bound in the mapping."""

    def pick(t: PatternTerm) -> PatternTerm:
        if isinstance(t, Variable):
            bound = mapping.get(t)
            return bound if bound is not None else t
        return t

    return TriplePattern(pick(tp.subject), pick(tp.predicate), pick(tp.object))


def merge(m1: SolutionMapping, m2: SolutionMapping) -> Optional[SolutionMapping]:
    """Union of two mappings if they agree on shared variables, else None."""
    out: dict[Variable, Term] = dict(m1.items())
    for v, t in m2.items():
        existing = out.get(v)
        if existing is not None and existing != t:
            return None
        out[v] = t
    return SolutionMapping(out)


class _QueryScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def line_col(self, at: Optional[int] = None) -> tuple[int, int]:
        pos = self.pos if at is None else at
        line = self.text.count("\n", 0, pos) + 1
        col = pos - self.text.rfind("\n", 0, pos)
        return line, col

    def error(self, message: str, at: Optional[int] = None) -> ParseError:
        line, col = self.line_col(at)
        return ParseError(message, line, col)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while not self.at_end():
            c = self.text[self.pos]
            if c in " \t\r\n":
                self.pos += 1
            elif c == "#":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl == -1 else nl
            else:
                return

    def try_keyword(self, word: str) -> bool:
        end = self.pos + len(word)
        if self.text[self.pos : end].upper() != word:
            return False
        if end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            return False
        self.pos = end
        return True

    def expect_keyword(self, word: str) -> None:
        if not self.try_keyword(word):
            raise self.error(f"expected keyword {word}")

    def expect_char(self, c: str, what: str) -> None:
        if self.peek() != c:
            raise self.error(f"expected {what}")
        self.pos += 1

    def _line_scanner(self) -> tuple[TermScanner, int]:
        line_start = self.text.rfind("\n", 0, self.pos) + 1
        line_end = self.text.find("\n", self.pos)
        if line_end == -1:
            line_end = len(self.text)
        line_no = self.text.count("\n", 0, self.pos) + 1
        scanner = TermScanner(self.text[line_start:line_end], line_no, self.pos - line_start)
        return scanner, line_start

    def scan_ntriples_term(self) -> Term:
        scanner, line_start = self._line_scanner()
        term = scanner.scan_term()
        self.pos = line_start + scanner.pos
        return term

    def scan_variable(self) -> Variable:
        at = self.pos
        self.pos += 1  # consume '?'
        m = _VAR_NAME.match(self.text, self.pos)
        if not m:
            raise self.error("invalid variable name", at=at)
        self.pos = m.end()
        return Variable(m.group())

    def scan_prefixed_name(self, prefixes: Mapping[str, str]) -> Iri:
        at = self.pos
        m = _PNAME_PREFIX.match(self.text, self.pos)
        if not m or self.text[m.end() : m.end() + 1] != ":":
            raise self.error("expected a term", at=at)
        prefix = m.group()
        if prefix not in prefixes:
            raise self.error(f"unknown prefix '{prefix}:'", at=at)
        lm = _PNAME_LOCAL.match(self.text, m.end() + 1)
        self.pos = lm.end()
        return Iri(prefixes[prefix] + lm.group())

    def scan_pattern_term(self, prefixes: Mapping[str, str], position: str) -> PatternTerm:
        at = self.pos
        c = self.peek()
        if c == "?":
            return self.scan_variable()
        if c in '<"_':
            return self.scan_ntriples_term()
        # 'a' is the rdf:type keyword unless it opens a prefixed name like a:p
        if c in "aA" and self.text[self.pos + 1 : self.pos + 2] != ":" and self.try_keyword("A"):
            if position != "predicate":
                raise self.error("keyword 'a' is only valid in predicate position", at=at)
            return Iri(RDF_TYPE)
        return self.scan_prefixed_name(prefixes)


def parse_query(text: str) -> BasicGraphPattern:
    """Parse `PREFIX ... SELECT ?v ... WHERE { tp . tp ... }` into a BGP.

    Prefixed names are expanded to absolute IRIs; the `a` keyword expands
    to rdf:type. Raises ParseError with the offending position otherwise.
    """
    sc = _QueryScanner(text)
    prefixes: dict[str, str] = {}

    sc.skip_ws()
    while sc.try_keyword("PREFIX"):
        sc.skip_ws()
        at = sc.pos
        m = _PNAME_PREFIX.match(sc.text, sc.pos)
        if not m or sc.text[m.end() : m.end() + 1] != ":":
            raise sc.error("expected prefix name", at=at)
        name = m.group()
        sc.pos = m.end() + 1
        sc.skip_ws()
        if sc.peek() != "<":
            raise sc.error("expected IRI after prefix name")
        iri = sc.scan_ntriples_term()
        prefixes[name] = iri.value  # type: ignore[union-attr]
        sc.skip_ws()

    sc.expect_keyword("SELECT")
    sc.skip_ws()
    projection: list[Variable] = []
    proj_positions: list[int] = []
    while sc.peek() == "?":
        proj_positions.append(sc.pos)
        projection.append(sc.scan_variable())
        sc.skip_ws()
    if not projection:
        raise sc.error("expected at least one projected variable after SELECT")

    sc.expect_keyword("WHERE")
    sc.skip_ws()
    sc.expect_char("{", "'{' to open the pattern block")
    sc.skip_ws()

    patterns: list[TriplePattern] = []
    if sc.peek() == "}":
        raise sc.error("empty pattern block")
    while True:
        subj_at = sc.pos
        subject = sc.scan_pattern_term(prefixes, "subject")
        if isinstance(subject, Literal):
            raise sc.error("literal in subject position", at=subj_at)
        sc.skip_ws()
        pred_at = sc.pos
        predicate = sc.scan_pattern_term(prefixes, "predicate")
        if not isinstance(predicate, (Variable, Iri)):
            raise sc.error("pattern predicate must be a variable or an IRI", at=pred_at)
        sc.skip_ws()
        obj = sc.scan_pattern_term(prefixes, "object")
        patterns.append(TriplePattern(subject, predicate, obj))
        sc.skip_ws()
        if sc.peek() == ".":
            sc.pos += 1
            sc.skip_ws()
            if sc.peek() == "}":  # tolerate a trailing separator
                break
            continue
        break
    sc.expect_char("}", "'}' or '.' after a triple pattern")
    sc.skip_ws()
    if not sc.at_end():
        raise sc.error("unexpected content after the pattern block")

    bound: set[Variable] = set()
    for tp in patterns:
        bound |= tp.variables()
    for var, at in zip(projection, proj_positions):
        if var not in bound:
            raise sc.error(f"projected variable ?{var.name} does not occur in any pattern", at=at)

    return BasicGraphPattern(tuple(patterns), tuple(projection))
