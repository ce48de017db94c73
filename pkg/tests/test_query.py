import random

import pytest

from fedcomplete import Iri, Literal, ParseError, SolutionMapping, TriplePattern, Variable, merge, parse_query, substitute
from fedcomplete.rdf import RDF_TYPE

M = Variable("m")
L = Variable("l")
X = Variable("x")
Y = Variable("y")
A_IRI = Iri("http://example.org/a")
B_IRI = Iri("http://example.org/b")
P_IRI = Iri("http://example.org/p")


def test_parse_two_pattern_query():
    bgp = parse_query("SELECT ?m ?l WHERE { ?m a <http://F> . ?m <http://label> ?l }")
    assert len(bgp.patterns) == 2
    assert bgp.projection == (M, L)
    assert bgp.patterns[0].predicate == Iri(RDF_TYPE)
    assert bgp.patterns[0].object == Iri("http://F")


def test_parse_prefixes_and_literals():
    bgp = parse_query(
        "PREFIX ex: <http://example.org/>\n"
        'SELECT ?s WHERE { ?s ex:name "Ada"@en }'
    )
    [tp] = bgp.patterns
    assert tp.predicate == Iri("http://example.org/name")
    assert isinstance(tp.object, Literal)


def test_keywords_case_insensitive():
    bgp = parse_query("select ?x where { ?x a <http://C> }")
    assert bgp.projection == (X,)


def test_prefix_named_a_is_not_the_type_keyword():
    bgp = parse_query("PREFIX a: <http://example.org/>\nSELECT ?x WHERE { ?x a:p a:o }")
    [tp] = bgp.patterns
    assert tp.predicate == Iri("http://example.org/p")
    assert tp.object == Iri("http://example.org/o")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("SELECT ?x WHERE { }", "empty pattern block"),
        ("SELECT ?x WHERE { ?y <http://p> ?z }", "projected variable ?x"),
        ("SELECT ?x WHERE { ?x ex:p ?y }", "unknown prefix 'ex:'"),
        ("SELECT WHERE { ?x <http://p> ?y }", "expected at least one projected variable"),
        ("SELECT ?x { ?x <http://p> ?y }", "expected keyword WHERE"),
        ("SELECT ?x WHERE { ?x <http://p> ?y", "expected '}'"),
        ("SELECT ?x WHERE { ?x <http://p> ?y } trailing", "unexpected content"),
        ('SELECT ?x WHERE { "lit" <http://p> ?y }', "literal in subject position"),
        ("SELECT ?x WHERE { ?x <http://p> a }", "only valid in predicate position"),
        ('SELECT ?x WHERE { ?x "p" ?y }', "predicate must be a variable or an IRI"),
    ],
)
def test_parse_errors_have_positions(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_query(text)
    assert fragment in str(err.value)
    assert err.value.line >= 1 and err.value.column >= 1


def test_error_position_points_at_offender():
    with pytest.raises(ParseError) as err:
        parse_query("SELECT ?x\nWHERE { ?y bad:p ?z }")
    assert err.value.line == 2
    assert err.value.column == 12


def test_trailing_separator_tolerated():
    bgp = parse_query("SELECT ?x WHERE { ?x <http://p> ?y . }")
    assert len(bgp.patterns) == 1


def test_substitute_examples():
    tp = TriplePattern(X, P_IRI, Y)
    bound = substitute(tp, SolutionMapping({X: A_IRI}))
    assert bound == TriplePattern(A_IRI, P_IRI, Y)
    assert substitute(tp, SolutionMapping()) == tp
    full = substitute(
        TriplePattern(X, Variable("p"), Y),
        SolutionMapping({X: A_IRI, Variable("p"): P_IRI, Y: B_IRI}),
    )
    assert full == TriplePattern(A_IRI, P_IRI, B_IRI)


def test_substitute_is_idempotent():
    rng = random.Random(3)
    for _ in range(100):
        tp = TriplePattern(
            rng.choice([X, A_IRI]), rng.choice([Variable("p"), P_IRI]), rng.choice([Y, B_IRI])
        )
        mapping = SolutionMapping(
            {v: rng.choice([A_IRI, B_IRI]) for v in tp.variables() if rng.random() < 0.7}
        )
        once = substitute(tp, mapping)
        assert substitute(once, mapping) == once


def test_merge_examples():
    assert merge(SolutionMapping({X: A_IRI}), SolutionMapping({Y: B_IRI})) == SolutionMapping(
        {X: A_IRI, Y: B_IRI}
    )
    assert merge(SolutionMapping({X: A_IRI}), SolutionMapping({X: B_IRI})) is None
    assert merge(
        SolutionMapping({X: A_IRI}), SolutionMapping({X: A_IRI, Y: B_IRI})
    ) == SolutionMapping({X: A_IRI, Y: B_IRI})


def test_merge_algebra():
    rng = random.Random(11)
    vars_pool = [Variable(n) for n in "abcd"]
    terms = [A_IRI, B_IRI]

    def rand_mapping():
        return SolutionMapping(
            {v: rng.choice(terms) for v in vars_pool if rng.random() < 0.5}
        )

    empty = SolutionMapping()
    for _ in range(200):
        m1, m2, m3 = rand_mapping(), rand_mapping(), rand_mapping()
        assert merge(m1, m2) == merge(m2, m1)
        assert merge(m1, empty) == m1
        left = merge(m1, m2)
        right = merge(m2, m3)
        lhs = merge(left, m3) if left is not None else None
        rhs = merge(m1, right) if right is not None else None
        if lhs is not None and rhs is not None:
            assert lhs == rhs


def test_solution_mapping_is_hashable_and_ordered():
    m1 = SolutionMapping({X: A_IRI, Y: B_IRI})
    m2 = SolutionMapping([(Y, B_IRI), (X, A_IRI)])
    assert m1 == m2
    assert hash(m1) == hash(m2)
    assert {m1, m2} == {m1}
    assert m1.restrict([X]) == SolutionMapping({X: A_IRI})
