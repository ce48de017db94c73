"""Deterministic generator for randomized test federations.

Every generated federation follows the detectable-incompleteness shape:
each class group has a fixed union-wide multiplicity per predicate, every
hosting endpoint types all of the group's entities, a majority of each
endpoint's instances carry all their objects locally (so the local
aggregated multiplicity equals the union truth), and the rest are split
across endpoint pairs. At link density 1 every cross-source answer is
reachable through emitted sameAs links; at density 0 no links exist at
all. Generation is a pure function of the spec: same spec, same bytes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .ntriples import serialize_ntriples
from .rdf import Graph, Iri, Literal, OWL_SAMEAS, RDF_TYPE, Triple

_TYPE = Iri(RDF_TYPE)
_SAMEAS = Iri(OWL_SAMEAS)


@dataclass(frozen=True)
class RandomFederationSpec:
    seed: int
    endpoint_count: int = 2
    class_count: int = 2
    predicate_count: int = 4
    triples_per_endpoint: int = 200
    link_density: float = 1.0

    def __post_init__(self):
        if not 1 <= self.endpoint_count <= 3:
            raise ValueError("endpoint_count must be in 1..3")
        if not 1 <= self.class_count <= 5:
            raise ValueError("class_count must be in 1..5")
        if not 1 <= self.predicate_count <= 8:
            raise ValueError("predicate_count must be in 1..8")
        if self.triples_per_endpoint > 200 or self.triples_per_endpoint < 1:
            raise ValueError("triples_per_endpoint must be in 1..200")
        if not 0.0 <= self.link_density <= 1.0:
            raise ValueError("link_density must be in [0, 1]")


@dataclass(frozen=True)
class Probe:
    query_file: str  # path relative to the federation directory
    query: str
    root: Optional[str]


@dataclass
class GeneratedFederation:
    directory: Path
    config_path: Path
    probes: list[Probe] = field(default_factory=list)


def _class_iri(endpoint: str, gi: int) -> str:
    return f"http://example.org/{endpoint}/class/g{gi}"


def _pred_iri(endpoint: str, pi: int) -> str:
    return f"http://example.org/{endpoint}/prop/p{pi}"


def _entity_iri(endpoint: str, gi: int, tag: str) -> str:
    return f"http://example.org/{endpoint}/ent/g{gi}/{tag}"


def gen_federation(spec: RandomFederationSpec, directory: Path) -> GeneratedFederation:
    """Emit config.json, one .nt file per endpoint, links.nt, and probe queries."""
    rng = random.Random(spec.seed)
    endpoints = [f"src{i}" for i in range(spec.endpoint_count)]

    groups = []
    for gi in range(spec.class_count):
        if spec.endpoint_count == 1:
            hosts = list(endpoints)
        else:
            hosts = sorted(rng.sample(endpoints, rng.randint(1, spec.endpoint_count)))
        groups.append({"gi": gi, "hosts": hosts, "preds": []})
    if spec.endpoint_count > 1 and not any(len(g["hosts"]) > 1 for g in groups):
        groups[0]["hosts"] = list(endpoints)
    for pi in range(spec.predicate_count):
        groups[pi % spec.class_count]["preds"].append((pi, rng.choice((2, 3))))

    graphs = {e: Graph() for e in endpoints}
    links = Graph()

    for g in groups:
        gi, hosts = g["gi"], g["hosts"]
        pairs = [(a, b) for i, a in enumerate(hosts) for b in hosts[i + 1 :]]
        entities = []  # (tag, home or None, pair or None)
        for si, pair in enumerate(pairs):
            entities.append((f"s{si}", None, pair))
        for host in hosts:
            # one more complete-at-home instance than split instances keeps
            # the local median equal to the union multiplicity
            for ci in range(len(hosts) + rng.randint(0, 1)):
                entities.append((f"c_{host}_{ci}", host, None))

        for tag, _, _ in entities:
            for host in hosts:
                graphs[host].add(
                    Triple(Iri(_entity_iri(host, gi, tag)), _TYPE, Iri(_class_iri(host, gi)))
                )

        for pi, k in g["preds"]:
            for tag, home, pair in entities:
                values = [Literal(f"g{gi}p{pi}{tag}v{j}") for j in range(k)]
                if home is not None:
                    subject = Iri(_entity_iri(home, gi, tag))
                    for v in values:
                        graphs[home].add(Triple(subject, Iri(_pred_iri(home, pi)), v))
                else:
                    a, b = pair
                    cut = rng.randint(1, k - 1)
                    for host, part in ((a, values[:cut]), (b, values[cut:])):
                        subject = Iri(_entity_iri(host, gi, tag))
                        for v in part:
                            graphs[host].add(Triple(subject, Iri(_pred_iri(host, pi)), v))

        for a, b in pairs:
            if rng.random() < spec.link_density:
                links.add(Triple(Iri(_class_iri(a, gi)), _SAMEAS, Iri(_class_iri(b, gi))))
            for pi, _ in g["preds"]:
                if rng.random() < spec.link_density:
                    links.add(Triple(Iri(_pred_iri(a, pi)), _SAMEAS, Iri(_pred_iri(b, pi))))
            for tag, _, _ in entities:
                if rng.random() < spec.link_density:
                    links.add(
                        Triple(
                            Iri(_entity_iri(a, gi, tag)), _SAMEAS, Iri(_entity_iri(b, gi, tag))
                        )
                    )

    for e in endpoints:
        if len(graphs[e]) > spec.triples_per_endpoint:
            raise ValueError(
                f"spec infeasible: endpoint {e} needs {len(graphs[e])} triples, "
                f"budget is {spec.triples_per_endpoint}"
            )

    candidates = [(g, pred) for g in groups if len(g["hosts"]) > 1 for pred in g["preds"]]
    if not candidates:
        candidates = [(g, pred) for g in groups for pred in g["preds"]]
    picks = candidates if len(candidates) <= 3 else rng.sample(candidates, 3)

    probes = []
    for idx, (g, (pi, _)) in enumerate(picks):
        root_e = rng.choice(g["hosts"])
        query = f"SELECT ?s ?o WHERE {{ ?s <{_pred_iri(root_e, pi)}> ?o }}\n"
        probes.append(Probe(f"queries/probe{idx}.rq", query, None))
    g, (pi, _) = picks[0]
    root_e = rng.choice(g["hosts"])
    query = (
        "SELECT ?s ?o WHERE {\n"
        f"  ?s a <{_class_iri(root_e, g['gi'])}> .\n"
        f"  ?s <{_pred_iri(root_e, pi)}> ?o\n"
        "}\n"
    )
    probes.append(Probe(f"queries/probe{len(picks)}.rq", query, root_e))

    directory = Path(directory)
    (directory / "queries").mkdir(parents=True, exist_ok=True)
    for e in endpoints:
        (directory / f"{e}.nt").write_text(serialize_ntriples(graphs[e]), encoding="utf-8")
    (directory / "links.nt").write_text(serialize_ntriples(links), encoding="utf-8")
    config = {
        "aggregation": "median",
        "endpoints": [{"id": e, "data": f"{e}.nt"} for e in endpoints],
        "links": "links.nt",
    }
    config_path = directory / "config.json"
    config_path.write_text(json.dumps(config, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for probe in probes:
        (directory / probe.query_file).write_text(probe.query, encoding="utf-8")
    manifest = [{"query": p.query_file, "root": p.root} for p in probes]
    (directory / "probes.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return GeneratedFederation(directory, config_path, probes)
