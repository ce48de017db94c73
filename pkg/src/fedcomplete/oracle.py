"""Brute-force ground truth for answer completeness.

The oracle view of a federation is the union of all member graphs after
rewriting every term (entities, classes, and predicates alike) to the
lexicographically least member of its sameAs class. Evaluation over that
union is a deliberately unoptimized nested loop: slow, but obviously
correct, and bounded to desk-scale fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .federation import Federation
from .query import BasicGraphPattern, SolutionMapping, TriplePattern, Variable
from .rdf import Graph, Literal, Term, Triple
from .sameas import SameAsClosure


@dataclass
class UnionGraph:
    graph: Graph
    closure: SameAsClosure


def _canon(closure: SameAsClosure, term: Term) -> Term:
    if isinstance(term, Literal):
        return term
    return closure.canonical(term)


def build_union(federation: Federation) -> UnionGraph:
    """Union all endpoint graphs, canonicalized through the sameAs closure."""
    closure = federation.sameas
    union = Graph()
    for graph in federation.graphs.values():
        for t in graph:
            union.add(
                Triple(
                    _canon(closure, t.subject),
                    _canon(closure, t.predicate),
                    _canon(closure, t.object),
                )
            )
    return UnionGraph(union, closure)


def _canon_pattern(closure: SameAsClosure, tp: TriplePattern) -> TriplePattern:
    def pick(t):
        if isinstance(t, Variable):
            return t
        return _canon(closure, t)

    return TriplePattern(pick(tp.subject), pick(tp.predicate), pick(tp.object))


def oracle_evaluate(bgp: BasicGraphPattern, union: UnionGraph) -> frozenset[SolutionMapping]:
    """Exhaustive nested-loop evaluation of the BGP over the union graph."""
    triples = list(union.graph)
    partials: list[dict[Variable, Term]] = [{}]
    for tp in bgp.patterns:
        pattern = _canon_pattern(union.closure, tp)
        extended: list[dict[Variable, Term]] = []
        for bindings in partials:
            for t in triples:
                candidate = dict(bindings)
                ok = True
                for pt, value in (
                    (pattern.subject, t.subject),
                    (pattern.predicate, t.predicate),
                    (pattern.object, t.object),
                ):
                    if isinstance(pt, Variable):
                        bound = candidate.get(pt)
                        if bound is None:
                            candidate[pt] = value
                        elif bound != value:
                            ok = False
                            break
                    elif pt != value:
                        ok = False
                        break
                if ok:
                    extended.append(candidate)
        partials = extended
    projection = list(bgp.projection)
    return frozenset(
        SolutionMapping((v, bindings[v]) for v in projection if v in bindings)
        for bindings in partials
    )


def canonical_mappings(
    mappings: Iterable[SolutionMapping], closure: SameAsClosure
) -> frozenset[SolutionMapping]:
    """Rewrite mapping terms to sameAs-canonical form for comparisons.

    The operator reports answers in the root's vocabulary while the oracle
    reports canonical representatives; equality of the two answer sets is
    meaningful only after pushing both through the same closure.
    """
    return frozenset(
        SolutionMapping((v, _canon(closure, t)) for v, t in m.items()) for m in mappings
    )
