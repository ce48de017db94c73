"""Shared generators for randomized tests (all seeded, fully deterministic)."""

from __future__ import annotations

import random

from fedcomplete import BlankNode, Graph, Iri, Literal, Triple
from fedcomplete.rdf import RDF_LANGSTRING, XSD_NS

_DATATYPES = [
    XSD_NS + "string",
    XSD_NS + "integer",
    XSD_NS + "date",
]

_LEXICALS = ["a", "b", "01", "1", "x y", 'quo"te', "back\\slash", "tab\there", "new\nline", "ünïcödé"]
_LANGS = ["en", "en-US", "de"]


def random_term(rng: random.Random, allow_literal: bool = True):
    kind = rng.randrange(3 if allow_literal else 2)
    if kind == 0:
        return Iri(f"http://example.org/r/{rng.randrange(30)}")
    if kind == 1:
        return BlankNode(f"b{rng.randrange(10)}")
    lex = rng.choice(_LEXICALS)
    if rng.random() < 0.3:
        return Literal(lex, RDF_LANGSTRING, rng.choice(_LANGS))
    if rng.random() < 0.5:
        return Literal(lex, rng.choice(_DATATYPES))
    return Literal(lex)


def random_triple(rng: random.Random) -> Triple:
    return Triple(
        random_term(rng, allow_literal=False),
        Iri(f"http://example.org/p/{rng.randrange(8)}"),
        random_term(rng),
    )


def random_graph(rng: random.Random, size: int) -> Graph:
    graph = Graph()
    for _ in range(size):
        graph.add(random_triple(rng))
    return graph


def random_typed_graph(rng: random.Random, size: int) -> Graph:
    """Random graph where every subject carries an rdf:type, so the
    profiler can describe all predicates."""
    from fedcomplete.rdf import RDF_TYPE

    graph = Graph()
    rdf_type = Iri(RDF_TYPE)
    classes = [Iri(f"http://example.org/class/{i}") for i in range(3)]
    for _ in range(size):
        t = random_triple(rng)
        graph.add(t)
        graph.add(Triple(t.subject, rdf_type, rng.choice(classes)))
        if isinstance(t.object, (Iri, BlankNode)):
            graph.add(Triple(t.object, rdf_type, rng.choice(classes)))
    return graph
