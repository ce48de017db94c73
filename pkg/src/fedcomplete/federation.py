"""Federation assembly and the bind-join query executor.

Endpoints are in-process objects behind a narrow request interface
(pattern in, sorted triple stream out) so a wire-backed implementation
could be substituted. A federation bundles the endpoints, the sameAs
closure over all member graphs, and the linked template catalog.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import ConfigError, EndpointUnavailableError, NoCandidateError, ParseError, UnknownEndpointError
from .expansion import PatternAnswer, TraceEvent, evaluate_pattern
from .ntriples import parse_ntriples
from .profile import AGGREGATIONS, Catalog, MoleculeTemplate, build_templates, link_catalog
from .query import (
    BasicGraphPattern,
    SolutionMapping,
    TriplePattern,
    Variable,
    merge,
    substitute,
)
from .rdf import Graph, Iri, RDF_TYPE, Triple, serialize_term
from .sameas import SameAsClosure, build_closure

_RDF_TYPE_IRI = Iri(RDF_TYPE)


class Endpoint:
    """One queryable source. Responses are a pure function of (graph, pattern)."""

    def __init__(self, endpoint_id: str, graph: Graph):
        self.id = endpoint_id
        self.graph = graph
        self.available = True  # failure switch for tests

    def request(self, pattern: TriplePattern) -> list[Triple]:
        if not self.available:
            raise EndpointUnavailableError(self.id)
        s = None if isinstance(pattern.subject, Variable) else pattern.subject
        p = None if isinstance(pattern.predicate, Variable) else pattern.predicate
        o = None if isinstance(pattern.object, Variable) else pattern.object
        return list(self.graph.match(s, p, o))


@dataclass
class Federation:
    endpoints: dict[str, Endpoint]
    catalog: Catalog
    sameas: SameAsClosure
    aggregation: str
    links: Optional[Graph] = None

    @property
    def graphs(self) -> dict[str, Graph]:
        return {eid: ep.graph for eid, ep in self.endpoints.items()}

    def request(self, endpoint_id: str, pattern: TriplePattern) -> list[Triple]:
        endpoint = self.endpoints.get(endpoint_id)
        if endpoint is None:
            raise UnknownEndpointError(f"federation does not serve endpoint {endpoint_id!r}")
        return endpoint.request(pattern)


def _load_config(config_path: Union[str, Path]):
    path = Path(config_path)
    if not path.is_file():
        raise ConfigError(f"federation config not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read federation config {path}: {exc}") from exc

    aggregation = data.get("aggregation", "median")
    if aggregation not in AGGREGATIONS:
        raise ConfigError(f"unknown aggregation name: {aggregation!r}")
    endpoints = data.get("endpoints", [])
    if not endpoints:
        raise ConfigError("federation config declares no endpoints")

    base = path.parent
    graphs: dict[str, Graph] = {}
    for ordinal, entry in enumerate(endpoints):
        endpoint_id = entry.get("id", "")
        if not endpoint_id or any(c.isspace() for c in endpoint_id):
            raise ConfigError(f"invalid endpoint id: {endpoint_id!r}")
        if endpoint_id in graphs:
            raise ConfigError(f"duplicate endpoint id: {endpoint_id!r}")
        data_path = base / entry.get("data", "")
        if not data_path.is_file():
            raise ConfigError(f"endpoint {endpoint_id!r}: data file not found: {data_path}")
        try:
            graphs[endpoint_id] = parse_ntriples(data_path.read_bytes(), bnode_scope=f"f{ordinal}")
        except ParseError as exc:
            raise ConfigError(f"endpoint {endpoint_id!r}: {exc}") from exc

    links = None
    if data.get("links"):
        links_path = base / data["links"]
        if not links_path.is_file():
            raise ConfigError(f"links file not found: {links_path}")
        try:
            links = parse_ntriples(links_path.read_bytes(), bnode_scope=f"f{len(endpoints)}")
        except ParseError as exc:
            raise ConfigError(f"links file: {exc}") from exc

    return aggregation, graphs, links


def assemble_federation(
    graphs: dict[str, Graph],
    links: Optional[Graph] = None,
    aggregation: str = "median",
) -> Federation:
    """Build a federation from already-loaded graphs: closure, catalog, endpoints."""
    closure = build_closure(graphs, links)
    base = Catalog()
    for endpoint_id, graph in graphs.items():
        for mt in build_templates(graph, endpoint_id, aggregation):
            base.add(mt)
    catalog = link_catalog(base, graphs, links)
    endpoints = {eid: Endpoint(eid, g) for eid, g in graphs.items()}
    return Federation(endpoints, catalog, closure, aggregation, links)


def load_federation(config_path: Union[str, Path]) -> Federation:
    """Build a federation from a config file.

    The config is JSON: {"aggregation": "median", "endpoints":
    [{"id": ..., "data": "file.nt"}, ...], "links": "optional.nt"}; data
    paths are resolved relative to the config file.
    """
    aggregation, graphs, links = _load_config(config_path)
    return assemble_federation(graphs, links, aggregation)


def _type_constraint(
    subject_var: Optional[Variable], bgp: Optional[BasicGraphPattern]
) -> Optional[str]:
    if subject_var is None or bgp is None:
        return None
    for tp in bgp.patterns:
        if (
            tp.subject == subject_var
            and isinstance(tp.predicate, Iri)
            and tp.predicate.value == RDF_TYPE
            and isinstance(tp.object, Iri)
        ):
            return tp.object.value
    return None


def select_root(
    tp: TriplePattern,
    bgp: Optional[BasicGraphPattern],
    federation: Federation,
    root_hint: Optional[str] = None,
    subject_var: Optional[Variable] = None,
) -> MoleculeTemplate:
    """Pick the template at which evaluation of tp starts.

    With a hint, prefer the hinted endpoint's template for the class the
    BGP asserts on tp's subject; failing that, the hinted endpoint's
    template describing tp's predicate; failing that, its lexicographically
    first template. Without a hint, the catalog template promising the
    highest multiplicity for tp's predicate wins, ties broken by
    (endpoint, class).
    """
    catalog = federation.catalog
    if subject_var is None and isinstance(tp.subject, Variable):
        subject_var = tp.subject

    if root_hint is not None:
        if root_hint not in federation.endpoints:
            raise UnknownEndpointError(f"root hint names unknown endpoint {root_hint!r}")
        local = catalog.templates_at(root_hint)
        if not local:
            raise NoCandidateError(f"no templates describe endpoint {root_hint!r}")
        class_iri = _type_constraint(subject_var, bgp)
        if class_iri is not None:
            mt = catalog.get(root_hint, class_iri)
            if mt is not None:
                return mt
        if isinstance(tp.predicate, Iri):
            described = [mt for mt in local if tp.predicate.value in mt.dtp]
            if described:
                return described[0]
        return local[0]

    if not isinstance(tp.predicate, Iri):
        raise NoCandidateError("cannot choose a root for an unbound predicate without a hint")
    candidates = [
        (mt, mt.dtp[tp.predicate.value].amd)
        for mt in catalog.templates()
        if tp.predicate.value in mt.dtp
    ]
    if not candidates:
        raise NoCandidateError(f"no template describes predicate {tp.predicate.value}")
    candidates.sort(key=lambda c: (-c[1], c[0].endpoint, c[0].class_iri))
    return candidates[0][0]


@dataclass
class QueryResult:
    mappings: frozenset[SolutionMapping]
    sources_used: set[str]
    pattern_traces: list[list[TraceEvent]] = field(default_factory=list)


def execute(
    bgp: BasicGraphPattern,
    federation: Federation,
    root_hint: Optional[str] = None,
    expand: bool = True,
) -> QueryResult:
    """Bind-join pipeline over the patterns in textual order.

    The first pattern runs through the expansion operator; each later
    pattern is instantiated once per upstream mapping, evaluated, and
    merged. Identical instantiations are evaluated once. The final
    mappings are projected and deduplicated.
    """
    sources: set[str] = set()
    traces: list[list[TraceEvent]] = []
    current: list[SolutionMapping] = [SolutionMapping()]

    for tp in bgp.patterns:
        subject_var = tp.subject if isinstance(tp.subject, Variable) else None
        produced: dict[SolutionMapping, None] = {}
        cache: dict[TriplePattern, PatternAnswer] = {}
        for upstream in sorted(current, key=SolutionMapping.sort_key):
            instantiated = substitute(tp, upstream)
            answer = cache.get(instantiated)
            if answer is None:
                root = select_root(instantiated, bgp, federation, root_hint, subject_var)
                answer = evaluate_pattern(instantiated, root, federation.catalog, federation, expand)
                cache[instantiated] = answer
                traces.append(answer.trace)
                sources |= answer.sources()
            for found in sorted(answer.mappings, key=SolutionMapping.sort_key):
                merged = merge(upstream, found)
                if merged is not None:
                    produced.setdefault(merged, None)
        current = list(produced)

    projected = frozenset(m.restrict(bgp.projection) for m in current)
    return QueryResult(projected, sources, traces)


def mappings_to_csv(mappings: Iterable[SolutionMapping], projection: Iterable[Variable]) -> str:
    """Sorted CSV with one column per projected variable (RFC-4180 quoting)."""
    projection = list(projection)
    rows = sorted(
        [serialize_term(m[v]) if v in m else "" for v in projection] for m in mappings
    )
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([v.name for v in projection])
    writer.writerows(rows)
    return out.getvalue()


def mappings_to_jsonl(mappings: Iterable[SolutionMapping], projection: Iterable[Variable]) -> str:
    projection = list(projection)
    rows = sorted(
        [serialize_term(m[v]) if v in m else "" for v in projection] for m in mappings
    )
    lines = [
        json.dumps({v.name: cell for v, cell in zip(projection, row)}, sort_keys=True)
        for row in rows
    ]
    return "".join(line + "\n" for line in lines)
