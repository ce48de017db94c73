import pytest

from fedcomplete import canonical_mappings, execute, load_federation, oracle_evaluate, parse_query
from fedcomplete.generate import GeneratedFederation, RandomFederationSpec, gen_federation
from fedcomplete.oracle import build_union


def _run_probes(gen: GeneratedFederation):
    fed = load_federation(gen.config_path)
    union = build_union(fed)
    for probe in gen.probes:
        bgp = parse_query(probe.query)
        expanded = execute(bgp, fed, root_hint=probe.root)
        root_only = execute(bgp, fed, root_hint=probe.root, expand=False)
        oracle = oracle_evaluate(bgp, union)
        yield probe, fed, bgp, expanded, root_only, oracle


def test_spec_bounds_validated():
    with pytest.raises(ValueError):
        RandomFederationSpec(seed=1, endpoint_count=4)
    with pytest.raises(ValueError):
        RandomFederationSpec(seed=1, link_density=1.5)
    with pytest.raises(ValueError):
        RandomFederationSpec(seed=1, triples_per_endpoint=500)


def test_same_spec_twice_is_byte_identical(tmp_path):
    spec = RandomFederationSpec(seed=7, endpoint_count=3, class_count=2, predicate_count=4)
    g1 = gen_federation(spec, tmp_path / "one")
    g2 = gen_federation(spec, tmp_path / "two")
    files1 = sorted(p.relative_to(g1.directory) for p in g1.directory.rglob("*") if p.is_file())
    files2 = sorted(p.relative_to(g2.directory) for p in g2.directory.rglob("*") if p.is_file())
    assert files1 == files2
    for rel in files1:
        assert (g1.directory / rel).read_bytes() == (g2.directory / rel).read_bytes(), rel


def test_budget_is_enforced(tmp_path):
    with pytest.raises(ValueError, match="infeasible"):
        gen_federation(
            RandomFederationSpec(
                seed=3, endpoint_count=3, class_count=5, predicate_count=8, triples_per_endpoint=40
            ),
            tmp_path,
        )


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_full_links_reach_the_oracle(tmp_path, seed):
    spec = RandomFederationSpec(seed=seed, endpoint_count=2 + seed % 2, link_density=1.0)
    gen = gen_federation(spec, tmp_path / str(seed))
    assert len(gen.probes) >= 3
    for probe, fed, _, expanded, _, oracle in _run_probes(gen):
        assert canonical_mappings(expanded.mappings, fed.sameas) == oracle, probe.query_file


@pytest.mark.parametrize("seed", [4, 5])
def test_no_links_means_root_only(tmp_path, seed):
    spec = RandomFederationSpec(seed=seed, endpoint_count=2, link_density=0.0)
    gen = gen_federation(spec, tmp_path / str(seed))
    for probe, fed, _, expanded, root_only, _ in _run_probes(gen):
        assert expanded.mappings == root_only.mappings, probe.query_file
        assert len(expanded.pattern_traces) == len(root_only.pattern_traces)


@pytest.mark.parametrize("seed", [6, 7, 8])
def test_partial_links_keep_the_sandwich(tmp_path, seed):
    spec = RandomFederationSpec(seed=seed, endpoint_count=3, link_density=0.5)
    gen = gen_federation(spec, tmp_path / str(seed))
    for probe, fed, _, expanded, root_only, oracle in _run_probes(gen):
        expanded_canon = canonical_mappings(expanded.mappings, fed.sameas)
        root_canon = canonical_mappings(root_only.mappings, fed.sameas)
        assert root_canon <= expanded_canon <= oracle, probe.query_file
