"""RDF terms, triples, and an indexed in-memory graph.

Equality of terms is purely syntactic: no IRI normalization, no literal
value-space comparison ("01" and "1" are different literals). Graphs use
set semantics and keep three lookup indexes (subject, predicate, object
keyed) that stay consistent with the triple set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF_NS + "type"
RDF_LANGSTRING = RDF_NS + "langString"
XSD_STRING = XSD_NS + "string"
OWL_SAMEAS = OWL_NS + "sameAs"
OWL_EQUIVALENT_CLASS = OWL_NS + "equivalentClass"

# Range sentinel for resources without any asserted rdf:type.
UNTYPED = OWL_NS + "Thing"

_LITERAL_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if any(c.isspace() for c in self.value):
            raise ValueError(f"IRI contains whitespace: {self.value!r}")


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")


@dataclass(frozen=True, slots=True)
class Literal:
    lexical_form: str
    datatype: str = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self):
        if self.language is not None:
            if self.datatype != RDF_LANGSTRING:
                raise ValueError("language tag requires the rdf:langString datatype")
            object.__setattr__(self, "language", self.language.lower())
        elif self.datatype == RDF_LANGSTRING:
            raise ValueError("rdf:langString literal requires a language tag")


Term = Union[Iri, BlankNode, Literal]


def serialize_term(term: Term) -> str:
    """N-Triples form of a term; also the lexicographic sort key everywhere."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        escaped = "".join(_LITERAL_ESCAPES.get(c, c) for c in term.lexical_form)
        if term.language is not None:
            return f'"{escaped}"@{term.language}'
        if term.datatype == XSD_STRING:
            return f'"{escaped}"'
        return f'"{escaped}"^^<{term.datatype}>'
    raise TypeError(f"not an RDF term: {term!r}")


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("triple subject cannot be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")

    def sort_key(self) -> tuple[str, str, str]:
        return (
            serialize_term(self.subject),
            serialize_term(self.predicate),
            serialize_term(self.object),
        )


class Graph:
    """An in-memory triple set with subject/predicate/object keyed indexes.

    Intended to be built once and then shared read-only; `match` results are
    returned in a deterministic order (lexicographic by term serialization).
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._spo: dict[Term, dict[Term, set[Term]]] = {}
        self._pos: dict[Term, dict[Term, set[Term]]] = {}
        self._osp: dict[Term, dict[Term, set[Term]]] = {}
        for t in triples:
            self.add(t)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def add(self, triple: Triple) -> bool:
        """Insert a triple; a no-op (returns False) if already present."""
        if triple in self._triples:
            return False
        self._triples.add(triple)
        s, p, o = triple.subject, triple.predicate, triple.object
        self._spo.setdefault(s, {}).setdefault(p, set()).add(o)
        self._pos.setdefault(p, {}).setdefault(o, set()).add(s)
        self._osp.setdefault(o, {}).setdefault(s, set()).add(p)
        return True

    def update(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def match(
        self,
        s: Optional[Term] = None,
        p: Optional[Term] = None,
        o: Optional[Term] = None,
    ) -> Iterator[Triple]:
        """Yield all triples matching the bound positions, in sorted order."""
        return iter(sorted(self._match_unordered(s, p, o), key=Triple.sort_key))

    def _match_unordered(self, s, p, o) -> Iterator[Triple]:
        if s is not None and p is not None and o is not None:
            t = Triple(s, p, o)
            if t in self._triples:
                yield t
        elif s is not None and p is not None:
            for obj in self._spo.get(s, {}).get(p, ()):
                yield Triple(s, p, obj)
        elif p is not None and o is not None:
            for subj in self._pos.get(p, {}).get(o, ()):
                yield Triple(subj, p, o)
        elif s is not None and o is not None:
            for pred in self._osp.get(o, {}).get(s, ()):
                yield Triple(s, pred, o)
        elif s is not None:
            for pred, objs in self._spo.get(s, {}).items():
                for obj in objs:
                    yield Triple(s, pred, obj)
        elif p is not None:
            for obj, subjs in self._pos.get(p, {}).items():
                for subj in subjs:
                    yield Triple(subj, p, obj)
        elif o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
        else:
            yield from self._triples

    def objects(self, s: Term, p: Term) -> set[Term]:
        """Distinct objects linked to s by p (the multiplicity base set)."""
        return set(self._spo.get(s, {}).get(p, ()))

    def subjects(self, p: Term, o: Term) -> set[Term]:
        return set(self._pos.get(p, {}).get(o, ()))

    def predicates(self) -> set[Term]:
        return set(self._pos.keys())

    def terms(self) -> Iterator[Term]:
        """Every term occurring in subject or object position."""
        seen: set[Term] = set()
        for t in self._triples:
            for term in (t.subject, t.object):
                if term not in seen:
                    seen.add(term)
                    yield term
