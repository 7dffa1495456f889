import json

import pytest

from fdl.config import ConfigError, load_config


def test_load_bundled_config(service_config, data_dir):
    assert service_config.data_dir == data_dir
    assert service_config.k == 10
    assert service_config.policy.w_struct == 0.6
    assert service_config.policy.confidence_floor == 0.5
    assert not service_config.lenient
    assert service_config.graph_snapshot_path.name == "graph.json"


def test_missing_config_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/config.json")


def test_missing_referenced_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "data_dir": ".",
        "ontology_path": "ontology.json",  # does not exist
        "templates_path": "templates.json",
        "lexicon_path": "lexicon.json",
    }))
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "ontology" in str(err.value)


def test_bad_k_rejected(tmp_path, data_dir):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "data_dir": str(data_dir),
        "ontology_path": str(data_dir / "ontology.json"),
        "templates_path": str(data_dir / "templates.json"),
        "lexicon_path": str(data_dir / "lexicon.json"),
        "k": 0,
    }))
    with pytest.raises(ConfigError):
        load_config(path)


def test_relative_paths_resolve_against_config_dir(data_dir):
    config = load_config(data_dir / "config.json")
    assert config.ontology_path.is_absolute()
    assert config.ontology_path.exists()
