"""Dataset profiling: multiplicity statistics and molecule templates.

A molecule template summarizes one RDF class at one endpoint: the
predicates its instances use, an aggregated multiplicity per predicate
(how many objects an instance typically has), and correspondence links
to classes and properties at other endpoints. The catalog of all
templates is what the expansion operator consults at query time.
"""

from __future__ import annotations

import json
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import UnknownEndpointError
from .rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    OWL_EQUIVALENT_CLASS,
    OWL_SAMEAS,
    RDF_TYPE,
    Term,
    UNTYPED,
)

Number = Union[int, float]

AGGREGATIONS: dict[str, Callable[[Sequence[int]], Number]] = {
    "median": statistics.median_low,  # lower median keeps values integral
    "mean": statistics.mean,
    "max": max,
}

_RDF_TYPE_IRI = Iri(RDF_TYPE)


def normalize_number(value: Number) -> Number:
    """Collapse integral floats to ints for stable serialization."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def multiplicity(graph: Graph, s: Term, p: str) -> int:
    """Number of distinct objects linked to s by predicate p."""
    return len(graph.objects(s, Iri(p)))


def aggregated_multiplicity(
    graph: Graph,
    class_iri: str,
    p: str,
    agg: str = "median",
    include_absent: bool = False,
) -> Number:
    """Aggregate the per-instance multiplicities of p over a class.

    Only instances with at least one p-triple contribute, read literally
    from the defining set comprehension; pass include_absent=True to count
    instances without the predicate as zeros instead. Returns 0 when no
    instance contributes.
    """
    if agg not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation: {agg!r}")
    values = []
    for subject in graph.subjects(_RDF_TYPE_IRI, Iri(class_iri)):
        count = multiplicity(graph, subject, p)
        if count > 0 or include_absent:
            values.append(count)
    if not values:
        return 0
    return normalize_number(AGGREGATIONS[agg](values))


@dataclass(frozen=True, slots=True)
class DtpEntry:
    predicate: str
    range_type: str
    amd: Number  # aggregated multiplicity over the template's class

    def __post_init__(self):
        if self.amd < 0:
            raise ValueError("aggregated multiplicity must be non-negative")


@dataclass
class MoleculeTemplate:
    """Source description of one class at one endpoint.

    dtp maps each predicate used by the class's instances to its entry;
    intra_c records (predicate, class) pairs for locally typed objects;
    inter_c records (predicate, class, endpoint) links to other endpoints,
    with rdf:type entries expressing class correspondence; inter_p records
    (predicate, foreign predicate, endpoint) property correspondences.
    """

    endpoint: str
    class_iri: str
    agg: str
    dtp: dict[str, DtpEntry] = field(default_factory=dict)
    intra_c: set[tuple[str, str]] = field(default_factory=set)
    inter_c: set[tuple[str, str, str]] = field(default_factory=set)
    inter_p: set[tuple[str, str, str]] = field(default_factory=set)

    def key(self) -> tuple[str, str]:
        return (self.endpoint, self.class_iri)

    def corresponding_classes(self, endpoint: str) -> set[str]:
        """Classes at the given endpoint this template's class corresponds to."""
        return {c for (p, c, e) in self.inter_c if e == endpoint and p == RDF_TYPE}

    def predicate_links(self, predicate: str, endpoint: str) -> set[str]:
        """Foreign predicates at the endpoint linked to the given predicate."""
        return {pp for (p, pp, e) in self.inter_p if p == predicate and e == endpoint}


class Catalog:
    """All molecule templates of a federation, keyed by (endpoint, class)."""

    def __init__(self, templates: Iterable[MoleculeTemplate] = ()):
        self._entries: dict[tuple[str, str], MoleculeTemplate] = {}
        for mt in templates:
            self.add(mt)

    def add(self, mt: MoleculeTemplate) -> None:
        self._entries[mt.key()] = mt

    def get(self, endpoint: str, class_iri: str) -> Optional[MoleculeTemplate]:
        return self._entries.get((endpoint, class_iri))

    def templates(self) -> list[MoleculeTemplate]:
        return [self._entries[k] for k in sorted(self._entries)]

    def templates_at(self, endpoint: str) -> list[MoleculeTemplate]:
        return [mt for mt in self.templates() if mt.endpoint == endpoint]

    def endpoints(self) -> set[str]:
        return {e for e, _ in self._entries}

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[MoleculeTemplate]:
        return iter(self.templates())

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._entries


def _range_type(graph: Graph, objects: Iterable[Term]) -> str:
    """Pick a range type by majority vote over the distinct objects.

    Literals vote for their datatype; resources vote for each asserted
    local type, or the untyped sentinel if they have none. Ties break
    lexicographically.
    """
    votes: Counter[str] = Counter()
    for obj in objects:
        if isinstance(obj, Literal):
            votes[obj.datatype] += 1
        else:
            types = [o.value for o in graph.objects(obj, _RDF_TYPE_IRI) if isinstance(o, Iri)]
            if types:
                for t in types:
                    votes[t] += 1
            else:
                votes[UNTYPED] += 1
    if not votes:
        return UNTYPED
    best = max(votes.values())
    return min(t for t, n in votes.items() if n == best)


def build_templates(graph: Graph, endpoint: str, agg: str = "median") -> list[MoleculeTemplate]:
    """One template per class with at least one instance in the graph.

    Correspondence components (inter_c, inter_p) are left empty; they are
    filled by link_catalog once all federation members are known.
    """
    if agg not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation: {agg!r}")
    classes: set[str] = set()
    for t in graph.match(p=_RDF_TYPE_IRI):
        if isinstance(t.object, Iri):
            classes.add(t.object.value)

    templates = []
    for class_iri in sorted(classes):
        instances = graph.subjects(_RDF_TYPE_IRI, Iri(class_iri))
        per_predicate_objects: dict[str, set[Term]] = {}
        for s in instances:
            for t in graph.match(s=s):
                per_predicate_objects.setdefault(t.predicate.value, set()).add(t.object)

        dtp: dict[str, DtpEntry] = {}
        intra_c: set[tuple[str, str]] = set()
        for pred, objects in per_predicate_objects.items():
            amd = aggregated_multiplicity(graph, class_iri, pred, agg)
            dtp[pred] = DtpEntry(pred, _range_type(graph, objects), amd)
            for obj in objects:
                if isinstance(obj, (Iri, BlankNode)):
                    for obj_type in graph.objects(obj, _RDF_TYPE_IRI):
                        if isinstance(obj_type, Iri):
                            intra_c.add((pred, obj_type.value))
        templates.append(MoleculeTemplate(endpoint, class_iri, agg, dtp, intra_c))
    return templates


def _correspondence_pairs(graphs: Mapping[str, Graph], links: Optional[Graph], predicate: str) -> set[tuple[str, str]]:
    """Symmetric (IRI, IRI) pairs declared by the given predicate anywhere."""
    pairs: set[tuple[str, str]] = set()
    sources = list(graphs.values()) + ([links] if links is not None else [])
    pred = Iri(predicate)
    for graph in sources:
        for t in graph.match(p=pred):
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                pairs.add((t.subject.value, t.object.value))
                pairs.add((t.object.value, t.subject.value))
    return pairs


def link_catalog(
    catalog: Catalog,
    graphs: Mapping[str, Graph],
    links: Optional[Graph] = None,
) -> Catalog:
    """Fill in the cross-endpoint correspondence components of every template.

    For a template of class C at endpoint W:
      - inter_c gains (p, Ck, SW) when an object of p under C in W's graph
        is typed Ck in SW's graph;
      - inter_c gains a class-correspondence entry (rdf:type, C', SW) when
        C' has a template at SW and either C' == C or the two classes are
        declared owl:sameAs / owl:equivalentClass in any graph or the
        links file;
      - inter_p gains (p, p', SW) when (p owl:sameAs p') is declared in
        either direction anywhere and p' is used as a predicate in SW's
        graph. Property links attach to every template of the endpoint, so
        a predicate absent from W's data can still be followed outward.
    """
    for endpoint in catalog.endpoints():
        if endpoint not in graphs:
            raise UnknownEndpointError(f"no graph provided for endpoint {endpoint!r}")

    sameas_pairs = _correspondence_pairs(graphs, links, OWL_SAMEAS)
    class_pairs = sameas_pairs | _correspondence_pairs(graphs, links, OWL_EQUIVALENT_CLASS)
    used_predicates = {
        e: {p.value for p in g.predicates() if isinstance(p, Iri)} for e, g in graphs.items()
    }
    classes_at = {e: {mt.class_iri for mt in catalog.templates_at(e)} for e in catalog.endpoints()}

    linked = Catalog()
    for mt in catalog.templates():
        graph = graphs[mt.endpoint]
        other_endpoints = sorted(e for e in catalog.endpoints() if e != mt.endpoint)
        inter_c: set[tuple[str, str, str]] = set()
        inter_p: set[tuple[str, str, str]] = set()

        instances = graph.subjects(_RDF_TYPE_IRI, Iri(mt.class_iri))
        for s in instances:
            for t in graph.match(s=s):
                if not isinstance(t.object, (Iri, BlankNode)):
                    continue
                for sw in other_endpoints:
                    for obj_type in graphs[sw].objects(t.object, _RDF_TYPE_IRI):
                        if isinstance(obj_type, Iri):
                            inter_c.add((t.predicate.value, obj_type.value, sw))

        for sw in other_endpoints:
            for foreign_class in classes_at.get(sw, ()):
                if foreign_class == mt.class_iri or (mt.class_iri, foreign_class) in class_pairs:
                    inter_c.add((RDF_TYPE, foreign_class, sw))
            for p, p_prime in sameas_pairs:
                if p_prime in used_predicates[sw]:
                    inter_p.add((p, p_prime, sw))

        linked.add(
            MoleculeTemplate(
                mt.endpoint,
                mt.class_iri,
                mt.agg,
                dict(mt.dtp),
                set(mt.intra_c),
                inter_c,
                inter_p,
            )
        )
    return linked


def catalog_to_json(catalog: Catalog) -> str:
    """Stable, diffable JSON rendering of a catalog."""
    out = []
    for mt in catalog.templates():
        out.append(
            {
                "endpoint": mt.endpoint,
                "class": mt.class_iri,
                "agg": mt.agg,
                "dtp": [
                    {"p": e.predicate, "t": e.range_type, "amd": normalize_number(e.amd)}
                    for e in sorted(mt.dtp.values(), key=lambda e: (e.predicate, e.range_type))
                ],
                "intraC": [list(pair) for pair in sorted(mt.intra_c)],
                "interC": [list(entry) for entry in sorted(mt.inter_c)],
                "interP": [list(entry) for entry in sorted(mt.inter_p)],
            }
        )
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def catalog_from_json(text: str) -> Catalog:
    data = json.loads(text)
    catalog = Catalog()
    for obj in data:
        dtp = {
            e["p"]: DtpEntry(e["p"], e["t"], normalize_number(e["amd"])) for e in obj["dtp"]
        }
        catalog.add(
            MoleculeTemplate(
                obj["endpoint"],
                obj["class"],
                obj["agg"],
                dtp,
                {tuple(pair) for pair in obj["intraC"]},
                {tuple(entry) for entry in obj["interC"]},
                {tuple(entry) for entry in obj["interP"]},
            )
        )
    return catalog
