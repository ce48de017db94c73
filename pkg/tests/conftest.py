from pathlib import Path

import pytest

from fedcomplete import parse_ntriples

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

LMDB = "http://data.linkedmdb.org/resource/movie/"
DBR = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def hair_lmdb_graph():
    return parse_ntriples((FIXTURES / "hair" / "lmdb.nt").read_bytes())


@pytest.fixture(scope="session")
def hair_dbpedia_graph():
    return parse_ntriples((FIXTURES / "hair" / "dbpedia.nt").read_bytes())


@pytest.fixture(scope="session")
def hair_links_graph():
    return parse_ntriples((FIXTURES / "hair" / "links.nt").read_bytes())


@pytest.fixture()
def hair_federation():
    from fedcomplete import load_federation

    return load_federation(FIXTURES / "hair" / "config.json")
