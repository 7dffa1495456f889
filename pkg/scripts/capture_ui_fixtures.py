#!/usr/bin/env python3
"""Capture live search responses for the frontend test suite.

Builds the engine from the bundled data and writes the exact JSON bodies the
HTTP API would return for the scenarios the web UI tests replay, plus the
brute-force set of weekend-open pediatricians used as the oracle for the
weekend facet. Rerun after regenerating fixtures:

    python scripts/capture_ui_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from fdl.ingest import RecordKind, build_graph, load_records
from fdl.keyword_index import build_index
from fdl.lexicon import load_lexicon
from fdl.ontology import load_ontology
from fdl.pipeline import Engine
from fdl.ranker import MergePolicy
from fdl.templates import load_templates

DATA = REPO_ROOT / "data"
OUT = REPO_ROOT / "frontend" / "tests" / "fixtures" / "responses.json"

FLAGSHIP = "What pediatricians are open on the weekend near me?"
LAT, LON = 34.05, -118.24


def weekend_open(location: dict) -> bool:
    order = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"]
    for entry in location["hours"]:
        h, m = entry["open"].split(":")
        start = int(h) * 60 + int(m)
        if entry["close"] in ("24:00", "00:00"):
            end = 1440
        else:
            h2, m2 = entry["close"].split(":")
            end = int(h2) * 60 + int(m2)
        day = order.index(entry["day"])
        days = [day] if end >= start else [day, (day + 1) % 7]
        if any(d in (5, 6) for d in days):
            return True
    return False


def main() -> None:
    specialties = load_records(DATA / "specialties.jsonl", RecordKind.SPECIALTY)
    providers = load_records(DATA / "providers.jsonl", RecordKind.PROVIDER)
    locations = load_records(DATA / "locations.jsonl", RecordKind.LOCATION)
    graph, report = build_graph(providers, locations, specialties,
                                load_ontology(DATA / "ontology.json"))
    assert report.ok
    engine = Engine(graph, build_index(graph),
                    load_lexicon(DATA / "lexicon.json", specialties),
                    load_templates(DATA / "templates.json"),
                    MergePolicy(), default_k=10)

    raw_locations = [json.loads(line) for line in open(DATA / "locations.jsonl")]
    weekend_loc_ids = {loc["id"] for loc in raw_locations if weekend_open(loc)}
    weekend_peds = sorted(
        p.id for p in providers
        if "Pediatrics" in p.specialties and set(p.locations) & weekend_loc_ids)

    def strip_timings(response: dict) -> dict:
        cleaned = dict(response)
        cleaned["timings_ms"] = {k: 0.0 for k in cleaned["timings_ms"]}
        return cleaned

    scenarios = {
        "flagship": {
            "q": FLAGSHIP, "lat": LAT, "lon": LON,
            "response": strip_timings(engine.search(FLAGSHIP, lat=LAT, lon=LON)),
        },
        "pediatricians": {
            "q": "pediatricians", "lat": LAT, "lon": LON,
            "response": strip_timings(engine.search("pediatricians", lat=LAT, lon=LON)),
        },
        "pediatricians_weekend": {
            "q": "pediatricians open on the weekend", "lat": LAT, "lon": LON,
            "response": strip_timings(engine.search(
                "pediatricians open on the weekend", lat=LAT, lon=LON)),
        },
        "no_hits": {
            "q": "hello world", "lat": None, "lon": None,
            "response": strip_timings(engine.search("hello world")),
        },
    }
    doc = {
        "flagship_question": FLAGSHIP,
        "coords": {"lat": LAT, "lon": LON},
        "weekend_pediatrician_ids": weekend_peds,
        "scenarios": scenarios,
    }
    for name, scenario in scenarios.items():
        assert scenario["response"]["results"] or name == "no_hits", name
    weekend_rows = scenarios["pediatricians_weekend"]["response"]["results"]
    assert weekend_rows, "weekend scenario returned nothing"
    assert all(r["entity_id"] in weekend_peds for r in weekend_rows), (
        "weekend scenario rows disagree with the brute-force oracle")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    print(f"wrote {OUT} ({len(weekend_peds)} weekend pediatricians)")


if __name__ == "__main__":
    main()
