"""Entity and property correspondence via an owl:sameAs closure.

A union-find over all owl:sameAs (and owl:equivalentClass) statements in a
federation. The closure is reflexive, symmetric, and transitive, and also
remembers at which endpoints each term occurs so results can be rewritten
into a chosen source's vocabulary.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .rdf import Graph, Iri, Literal, OWL_EQUIVALENT_CLASS, OWL_SAMEAS, Term, serialize_term


class SameAsClosure:
    def __init__(self):
        self._parent: dict[Term, Term] = {}
        self._members: dict[Term, set[Term]] = {}
        self._occurs: dict[Term, set[str]] = {}

    def _find(self, term: Term) -> Term:
        root = term
        while self._parent.get(root, root) != root:
            root = self._parent[root]
        while self._parent.get(term, term) != term:
            self._parent[term], term = root, self._parent[term]
        return root

    def link(self, a: Term, b: Term) -> None:
        """Declare a and b to denote the same thing. Literals are not linkable."""
        if isinstance(a, Literal) or isinstance(b, Literal):
            return
        ra, rb = self._find(a), self._find(b)
        self._members.setdefault(ra, {ra}).add(a)
        self._members.setdefault(rb, {rb}).add(b)
        if ra == rb:
            return
        # attach the lexicographically larger root under the smaller one
        if serialize_term(rb) < serialize_term(ra):
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._members[ra] |= self._members.pop(rb)

    def note_occurrence(self, term: Term, endpoint: str) -> None:
        self._occurs.setdefault(term, set()).add(endpoint)

    def members(self, term: Term) -> set[Term]:
        root = self._find(term)
        found = self._members.get(root)
        return set(found) if found else {term}

    def same(self, a: Term, b: Term) -> bool:
        return a == b or self._find(a) == self._find(b)

    def canonical(self, term: Term) -> Term:
        """The lexicographically least member of the term's class."""
        if isinstance(term, Literal):
            return term
        return min(self.members(term), key=serialize_term)

    def representative_at(self, term: Term, endpoint: str) -> Optional[Term]:
        """The least member of term's class occurring at the endpoint, if any."""
        if isinstance(term, Literal):
            return None
        at = [m for m in self.members(term) if endpoint in self._occurs.get(m, ())]
        return min(at, key=serialize_term) if at else None

    def to_vocabulary(self, term: Term, endpoint: str) -> Term:
        """Rewrite a term into the endpoint's vocabulary where possible.

        Falls back to the least member of the whole class when no member
        occurs at the endpoint.
        """
        if isinstance(term, Literal):
            return term
        rep = self.representative_at(term, endpoint)
        return rep if rep is not None else self.canonical(term)


def build_closure(
    graphs: Mapping[str, Graph],
    links: Optional[Graph] = None,
    correspondence_predicates: Iterable[str] = (OWL_SAMEAS, OWL_EQUIVALENT_CLASS),
) -> SameAsClosure:
    """Build the closure from every member graph plus the optional links graph.

    Term occurrences are recorded for endpoint graphs only; the links graph
    is federation metadata, not data.
    """
    closure = SameAsClosure()
    predicates = [Iri(p) for p in correspondence_predicates]
    sources: list[Graph] = list(graphs.values())
    if links is not None:
        sources.append(links)
    for graph in sources:
        for pred in predicates:
            for t in graph.match(p=pred):
                closure.link(t.subject, t.object)
    for endpoint_id, graph in graphs.items():
        for term in graph.terms():
            closure.note_occurrence(term, endpoint_id)
    return closure
