import importlib.util
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"
SCRIPTS_DIR = ROOT / "scripts"

sys.path.insert(0, str(ROOT / "tests"))

from fdl.config import load_config
from fdl.ingest import RecordKind, build_graph, load_records
from fdl.keyword_index import build_index
from fdl.lexicon import load_lexicon
from fdl.ontology import load_ontology
from fdl.pipeline import Engine
from fdl.ranker import MergePolicy
from fdl.templates import load_templates


def load_script(name: str):
    """Import one of the committed oracle scripts as a module."""
    path = SCRIPTS_DIR / f"{name}.py"
    spec = importlib.util.spec_from_file_location(name, path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def provider_records():
    return load_records(DATA_DIR / "providers.jsonl", RecordKind.PROVIDER)


@pytest.fixture(scope="session")
def location_records():
    return load_records(DATA_DIR / "locations.jsonl", RecordKind.LOCATION)


@pytest.fixture(scope="session")
def specialty_records():
    return load_records(DATA_DIR / "specialties.jsonl", RecordKind.SPECIALTY)


@pytest.fixture(scope="session")
def ontology():
    return load_ontology(DATA_DIR / "ontology.json")


@pytest.fixture(scope="session")
def fixture_graph(provider_records, location_records, specialty_records, ontology):
    graph, report = build_graph(provider_records, location_records,
                                specialty_records, ontology)
    assert report.ok
    return graph


@pytest.fixture(scope="session")
def engine(fixture_graph, specialty_records) -> Engine:
    index = build_index(fixture_graph)
    lexicon = load_lexicon(DATA_DIR / "lexicon.json", specialty_records)
    templates = load_templates(DATA_DIR / "templates.json")
    return Engine(fixture_graph, index, lexicon, templates, MergePolicy(), default_k=10)


@pytest.fixture(scope="session")
def service_config():
    return load_config(DATA_DIR / "config.json")
