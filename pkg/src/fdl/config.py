"""Service configuration, loaded from a JSON file.

Relative paths are resolved against the config file's directory so the
bundled fixture tree works from any working directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .ranker import MergePolicy


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    data_dir: Path
    ontology_path: Path
    templates_path: Path
    lexicon_path: Path
    policy: MergePolicy
    host: str = "127.0.0.1"
    port: int = 8347
    k: int = 10
    lenient: bool = False

    @property
    def snapshot_dir(self) -> Path:
        return self.data_dir / "snapshot"

    @property
    def graph_snapshot_path(self) -> Path:
        return self.snapshot_dir / "graph.json"

    @property
    def index_snapshot_path(self) -> Path:
        return self.snapshot_dir / "index.json"

    def fixture_path(self, name: str) -> Path:
        return self.data_dir / name


def load_config(path) -> Config:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}")

    base = path.parent

    def resolve(key: str) -> Path:
        if key not in raw:
            raise ConfigError(f"config is missing {key!r}")
        candidate = Path(raw[key])
        if not candidate.is_absolute():
            candidate = base / candidate
        if not candidate.exists():
            raise ConfigError(f"config {key} does not exist: {candidate}")
        return candidate

    k = int(raw.get("k", 10))
    if k < 1:
        raise ConfigError("k must be at least 1")
    policy = MergePolicy(
        w_struct=float(raw.get("w_struct", 0.6)),
        w_text=float(raw.get("w_text", 0.3)),
        w_prox=float(raw.get("w_prox", 0.1)),
        confidence_floor=float(raw.get("confidence_floor", 0.5)),
    )
    return Config(
        data_dir=resolve("data_dir"),
        ontology_path=resolve("ontology_path"),
        templates_path=resolve("templates_path"),
        lexicon_path=resolve("lexicon_path"),
        policy=policy,
        host=str(raw.get("host", "127.0.0.1")),
        port=int(raw.get("port", 8347)),
        k=k,
        lenient=bool(raw.get("lenient", False)),
    )
