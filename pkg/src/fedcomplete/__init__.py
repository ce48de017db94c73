"""Completeness-aware federated query engine for heterogeneous RDF sources."""

from .errors import (
    ConfigError,
    EndpointUnavailableError,
    FedCompleteError,
    NoCandidateError,
    NoMappingError,
    ParseError,
    UnboundPredicateError,
    UnknownEndpointError,
)
from .expansion import PatternAnswer, TraceEvent, evaluate_pattern, is_incomplete, map_pattern, serialize_trace
from .federation import (
    Endpoint,
    Federation,
    QueryResult,
    assemble_federation,
    execute,
    load_federation,
    mappings_to_csv,
    mappings_to_jsonl,
    select_root,
)
from .ntriples import parse_ntriples, serialize_ntriples
from .oracle import UnionGraph, build_union, canonical_mappings, oracle_evaluate
from .profile import (
    Catalog,
    DtpEntry,
    MoleculeTemplate,
    aggregated_multiplicity,
    build_templates,
    catalog_from_json,
    catalog_to_json,
    link_catalog,
    multiplicity,
)
from .query import (
    BasicGraphPattern,
    SolutionMapping,
    TriplePattern,
    Variable,
    merge,
    parse_query,
    substitute,
)
from .ranking import rank, relevance, relevant_templates
from .rdf import BlankNode, Graph, Iri, Literal, Term, Triple, serialize_term
from .sameas import SameAsClosure, build_closure

__version__ = "0.1.0"
