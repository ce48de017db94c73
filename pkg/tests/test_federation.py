import json
import random

import pytest

from conftest import DBO, FIXTURES, LMDB
from fedcomplete import (
    Iri,
    TriplePattern,
    Variable,
    assemble_federation,
    execute,
    load_federation,
    mappings_to_csv,
    mappings_to_jsonl,
    parse_query,
    select_root,
)
from fedcomplete.errors import ConfigError, EndpointUnavailableError, NoCandidateError
from fedcomplete.rdf import RDF_TYPE
from helpers import random_typed_graph

M = Variable("m")
L = Variable("l")

HAIR_QUERY = (FIXTURES / "hair" / "queries" / "labels.rq").read_text()


def test_load_federation_builds_catalog(hair_federation):
    assert set(hair_federation.endpoints) == {"lmdb", "dbpedia"}
    assert len(hair_federation.catalog) >= 2
    assert hair_federation.aggregation == "median"


def test_load_federation_missing_config(tmp_path):
    with pytest.raises(ConfigError):
        load_federation(tmp_path / "absent.json")


def _write_config(tmp_path, payload):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload))
    return path


def test_load_federation_zero_endpoints(tmp_path):
    path = _write_config(tmp_path, {"aggregation": "median", "endpoints": []})
    with pytest.raises(ConfigError, match="no endpoints"):
        load_federation(path)


def test_load_federation_missing_data_cites_endpoint(tmp_path):
    path = _write_config(tmp_path, {"endpoints": [{"id": "e1", "data": "gone.nt"}]})
    with pytest.raises(ConfigError, match="'e1'"):
        load_federation(path)


def test_load_federation_rejects_whitespace_id(tmp_path):
    (tmp_path / "a.nt").write_text("")
    path = _write_config(tmp_path, {"endpoints": [{"id": "bad id", "data": "a.nt"}]})
    with pytest.raises(ConfigError, match="invalid endpoint id"):
        load_federation(path)


def test_load_federation_duplicate_ids(tmp_path):
    (tmp_path / "a.nt").write_text("")
    path = _write_config(
        tmp_path,
        {"endpoints": [{"id": "e1", "data": "a.nt"}, {"id": "e1", "data": "a.nt"}]},
    )
    with pytest.raises(ConfigError, match="duplicate endpoint id"):
        load_federation(path)


def test_load_federation_unknown_aggregation(tmp_path):
    (tmp_path / "a.nt").write_text("")
    path = _write_config(
        tmp_path, {"aggregation": "mode", "endpoints": [{"id": "e1", "data": "a.nt"}]}
    )
    with pytest.raises(ConfigError, match="unknown aggregation"):
        load_federation(path)


def test_load_federation_parse_error_cites_endpoint(tmp_path):
    (tmp_path / "bad.nt").write_text("<http://a> <http://p> <http://b")
    path = _write_config(tmp_path, {"endpoints": [{"id": "e1", "data": "bad.nt"}]})
    with pytest.raises(ConfigError, match="'e1'.*line 1"):
        load_federation(path)


def test_select_root_with_hint_and_type_constraint(hair_federation):
    bgp = parse_query(HAIR_QUERY)
    label_tp = bgp.patterns[1]
    mt = select_root(label_tp, bgp, hair_federation, root_hint="lmdb")
    assert mt.key() == ("lmdb", LMDB + "Film")


def test_select_root_without_hint_prefers_highest_promise(hair_federation):
    tp = TriplePattern(M, Iri("http://www.w3.org/2000/01/rdf-schema#label"), L)
    mt = select_root(tp, None, hair_federation)
    # rdfs:label is promised at 2 by the dbpedia template, 1 by the lmdb one
    assert mt.key() == ("dbpedia", DBO + "Film")


def test_select_root_unknown_predicate_errors(hair_federation):
    with pytest.raises(NoCandidateError):
        select_root(TriplePattern(M, Iri("http://nowhere/p"), L), None, hair_federation)


def test_execute_hair_query_matches_hand_count(hair_federation):
    bgp = parse_query(HAIR_QUERY)
    result = execute(bgp, hair_federation, root_hint="lmdb")
    assert len(result.mappings) == 6
    assert result.sources_used == {"lmdb", "dbpedia"}
    root_only = execute(bgp, hair_federation, root_hint="lmdb", expand=False)
    assert len(root_only.mappings) == 2
    assert root_only.sources_used == {"lmdb"}


def test_execute_is_byte_stable(hair_federation):
    bgp = parse_query(HAIR_QUERY)
    outs = [
        mappings_to_csv(execute(bgp, hair_federation, root_hint="lmdb").mappings, bgp.projection)
        for _ in range(2)
    ]
    assert outs[0] == outs[1]


def test_execute_empty_federation_graphs(tmp_path):
    (tmp_path / "a.nt").write_text(
        "<http://x/s> <http://x/p> <http://x/o> .\n"
        "<http://x/s> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://x/C> .\n"
    )
    (tmp_path / "b.nt").write_text("")
    path = _write_config(
        tmp_path,
        {"endpoints": [{"id": "e1", "data": "a.nt"}, {"id": "e2", "data": "b.nt"}]},
    )
    fed = load_federation(path)
    bgp = parse_query("SELECT ?s WHERE { ?s <http://x/p> ?o }")
    result = execute(bgp, fed)
    assert len(result.mappings) == 1
    assert result.sources_used == {"e1"}


def test_endpoint_unavailable_aborts_query(hair_federation):
    hair_federation.endpoints["dbpedia"].available = False
    bgp = parse_query(HAIR_QUERY)
    with pytest.raises(EndpointUnavailableError) as err:
        execute(bgp, hair_federation, root_hint="lmdb")
    assert err.value.endpoint_id == "dbpedia"


def _brute_force_bgp(graph, bgp):
    """Independent nested-loop evaluation used as the executor oracle."""
    partials = [dict()]
    for tp in bgp.patterns:
        extended = []
        for bindings in partials:
            for t in graph:
                cand = dict(bindings)
                ok = True
                for pt, val in (
                    (tp.subject, t.subject),
                    (tp.predicate, t.predicate),
                    (tp.object, t.object),
                ):
                    if isinstance(pt, Variable):
                        if cand.get(pt, val) != val:
                            ok = False
                            break
                        cand[pt] = val
                    elif pt != val:
                        ok = False
                        break
                if ok:
                    extended.append(cand)
        partials = extended
    return {
        tuple(sorted((v.name, str(b[v])) for v in bgp.projection if v in b)) for b in partials
    }


@pytest.mark.parametrize("seed", range(4))
def test_single_endpoint_execute_equals_brute_force(seed):
    rng = random.Random(seed)
    graph = random_typed_graph(rng, 60)
    fed = assemble_federation({"solo": graph})
    preds = sorted(p.value for p in graph.predicates() if p.value != RDF_TYPE)
    if not preds:
        return
    p = Iri(rng.choice(preds))
    bgp = parse_query(f"SELECT ?s ?o WHERE {{ ?s <{p.value}> ?o }}")
    result = execute(bgp, fed)
    got = {
        tuple(sorted((v.name, str(m[v])) for v in bgp.projection if v in m))
        for m in result.mappings
    }
    assert got == _brute_force_bgp(graph, bgp)


def test_csv_and_jsonl_renderings(hair_federation):
    bgp = parse_query(HAIR_QUERY)
    result = execute(bgp, hair_federation, root_hint="lmdb")
    csv_text = mappings_to_csv(result.mappings, bgp.projection)
    lines = csv_text.splitlines()
    assert lines[0] == "m,l"
    assert len(lines) == 7
    assert lines[1:] == sorted(lines[1:])
    jsonl_text = mappings_to_jsonl(result.mappings, bgp.projection)
    rows = [json.loads(line) for line in jsonl_text.splitlines()]
    assert len(rows) == 6
    assert all(set(r) == {"m", "l"} for r in rows)
