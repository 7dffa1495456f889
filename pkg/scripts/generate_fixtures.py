#!/usr/bin/env python3
"""Deterministic fixture generator for the bundled demo dataset.

Writes the provider/location/specialty JSONL files, the ontology, lexicon,
template library, query set, labels, service config, and the BM25
micro-corpus into ``data/``. Everything derives from a fixed seed, so
regeneration is byte-identical.

After writing, the generator rebuilds the whole engine from the files and
verifies the properties the evaluation experiment relies on (which queries
are zero-result for the keyword path, that the hybrid answers them, that the
flagship weekend question matches its brute-force answer set, and that
precision@5 favors the hybrid). A failed check aborts with an assertion.

Usage: python scripts/generate_fixtures.py [--out DIR] [--skip-verify]
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

SEED = 20240811

# --------------------------------------------------------------------------
# Static pools
# --------------------------------------------------------------------------

SPECIALTIES: list[tuple[str, list[str]]] = [
    ("Pediatrics", ["pediatrician", "kids doctor", "childrens doctor", "baby doctor"]),
    ("Cardiology", ["cardiologist", "heart doctor", "heart specialist"]),
    ("Dermatology", ["dermatologist", "skin doctor"]),
    ("Neurology", ["neurologist", "nerve specialist", "brain doctor"]),
    ("Oncology", ["oncologist", "cancer doctor", "cancer specialist"]),
    ("Orthopedics", ["orthopedist", "bone doctor", "orthopedic surgeon"]),
    ("Ophthalmology", ["ophthalmologist", "eye doctor", "eye surgeon"]),
    ("Psychiatry", ["psychiatrist", "mental health doctor"]),
    ("Gastroenterology", ["gastroenterologist", "stomach doctor", "digestive specialist"]),
    ("Endocrinology", ["endocrinologist", "hormone doctor", "diabetes doctor"]),
    ("Rheumatology", ["rheumatologist", "arthritis doctor"]),
    ("Urology", ["urologist"]),
    ("Nephrology", ["nephrologist", "kidney doctor"]),
    ("Pulmonology", ["pulmonologist", "lung doctor"]),
    ("Hematology", ["hematologist", "blood doctor"]),
    ("Allergy and Immunology", ["allergist", "allergy doctor"]),
    ("Family Medicine", ["family doctor", "general practitioner"]),
    ("Internal Medicine", ["internist"]),
    ("Obstetrics", ["obstetrician", "pregnancy doctor"]),
    ("Gynecology", ["gynecologist", "womens health doctor"]),
    ("Otolaryngology", ["ent doctor", "ear nose and throat doctor", "ent specialist"]),
    ("Anesthesiology", ["anesthesiologist"]),
    ("Pathology", ["pathologist"]),
    ("Podiatry", ["podiatrist", "foot doctor"]),
    ("Chiropractic", ["chiropractor", "back doctor"]),
    ("Optometry", ["optometrist", "vision doctor"]),
    ("Physical Medicine", ["rehabilitation doctor", "rehab specialist"]),
    ("Sports Medicine", ["sports doctor", "sports injury specialist"]),
    ("Geriatrics", ["geriatrician", "senior doctor"]),
    ("Neonatology", ["neonatologist", "newborn specialist"]),
    ("Infectious Disease", ["infection specialist", "infectious disease doctor"]),
    ("Plastic Surgery", ["plastic surgeon", "cosmetic surgeon"]),
    ("Vascular Surgery", ["vascular surgeon", "vein doctor"]),
    ("Dentistry", ["dentist", "tooth doctor"]),
]

# City -> (lat, lon) of the town center; all invented names.
CITIES: list[tuple[str, float, float]] = [
    ("Crestline", 34.05, -118.25),
    ("Marwick", 34.14, -118.05),
    ("Ostenholm", 33.92, -118.31),
    ("Pinevale", 34.21, -118.36),
    ("Lakemont", 33.85, -117.95),
    ("Harrowgate", 34.02, -117.88),
    ("Sablewood", 33.78, -118.12),
    ("Vernhill", 34.09, -118.44),
    ("Telfair", 33.96, -118.02),
    ("Quarrystone", 34.17, -117.92),
]

DEPARTMENTS = [
    "Radiology", "Laboratory", "Pharmacy", "Imaging", "Physical Therapy",
    "Behavioral Health", "Occupational Medicine", "Sleep Center",
    "Infusion Center", "Dialysis", "Wound Clinic", "Travel Medicine",
]

LANGUAGES = [
    "English", "Spanish", "Mandarin", "Cantonese", "Korean", "Vietnamese",
    "Tagalog", "Russian", "Armenian", "Farsi", "Arabic",
]

LOCATION_SUFFIXES = [
    "Medical Center", "Clinic", "Health Pavilion", "Medical Plaza",
    "Community Hospital", "Medical Offices",
]

# Name pools. Chosen so no token lands within spell-correction range of the
# evaluation queries' words (e.g. no Owen because of "open", no Don because
# of "on", no Neal because of "near").
FIRST_NAMES = [
    "Amara", "Bianca", "Caleb", "Dmitri", "Elena", "Farid", "Grace", "Hiro",
    "Imani", "Jonas", "Katya", "Liam", "Mira", "Nadia", "Oskar", "Priya",
    "Quentin", "Rosa", "Santiago", "Tessa", "Uma", "Viktor", "Wanda",
    "Xiomara", "Yusuf", "Zara", "Anders", "Beatriz", "Cormac", "Delphine",
    "Emeka", "Freya", "Gideon", "Halima", "Ingrid", "Jasper", "Keiko",
    "Lucia", "Marcus", "Noor",
]
LAST_NAMES = [
    "Abernathy", "Birkeland", "Castellanos", "Dunmore", "Ellingsworth",
    "Fairbanks", "Grimaldi", "Holloway", "Ivanenko", "Jablonski",
    "Kowalczyk", "Lindqvist", "Montenegro", "Nakamura", "Okonkwo",
    "Pellegrini", "Quintanilla", "Rutherford", "Sandoval", "Takahashi",
    "Underwood", "Vasquez", "Winterbourne", "Yamamoto", "Zielinski",
    "Ashford", "Blackwood", "Carmichael", "Davenport", "Eastman",
    "Fitzgerald", "Galloway", "Hartwell", "Ibarra", "Jennings", "Kirkland",
    "Lockhart", "Mercado", "Northcott", "Osborne", "Prescott", "Quimby",
    "Ravenscroft", "Silverstein", "Thackeray", "Uriarte", "Villanueva",
    "Westbrook", "Yarborough", "Zamorano",
]

N_PROVIDERS = 220
N_LOCATIONS = 24

FLAGSHIP_QUESTION = "What pediatricians are open on the weekend near me?"
TEST_LAT, TEST_LON = 34.05, -118.24

# --------------------------------------------------------------------------
# Static artifacts: ontology, lexicon, templates, config, micro-corpus
# --------------------------------------------------------------------------

ONTOLOGY = {
    "classes": ["City", "Department", "Location", "Provider", "Specialty"],
    "relations": [
        {"type": "WORKS_AT", "src": "Provider", "dst": "Location"},
        {"type": "HAS_SPECIALTY", "src": "Provider", "dst": "Specialty"},
        {"type": "HAS_DEPARTMENT", "src": "Location", "dst": "Department"},
        {"type": "IN_CITY", "src": "Location", "dst": "City"},
    ],
    "properties": [
        {"class": "Provider", "name": "id", "kind": "text", "required": True},
        {"class": "Provider", "name": "name", "kind": "text", "required": True},
        {"class": "Provider", "name": "gender", "kind": "text", "required": False},
        {"class": "Provider", "name": "languages", "kind": "text_list", "required": True},
        {"class": "Provider", "name": "accepting_new_patients", "kind": "flag",
         "required": True},
        {"class": "Location", "name": "id", "kind": "text", "required": True},
        {"class": "Location", "name": "name", "kind": "text", "required": True},
        {"class": "Location", "name": "city", "kind": "text", "required": True},
        {"class": "Location", "name": "geo", "kind": "geo", "required": True},
        {"class": "Location", "name": "hours", "kind": "hours", "required": True},
        {"class": "Specialty", "name": "id", "kind": "text", "required": True},
        {"class": "Specialty", "name": "name", "kind": "text", "required": True},
        {"class": "Specialty", "name": "synonyms", "kind": "text_list", "required": False},
        {"class": "Department", "name": "name", "kind": "text", "required": True},
        {"class": "City", "name": "name", "kind": "text", "required": True},
    ],
}


def static_lexicon_entries() -> list[dict]:
    entries = [
        # GEO
        {"surface": "near me", "slot_type": "GEO", "canonical": "NEAR_ME"},
        {"surface": "nearby", "slot_type": "GEO", "canonical": "NEAR_ME"},
        {"surface": "close to me", "slot_type": "GEO", "canonical": "NEAR_ME"},
        {"surface": "around me", "slot_type": "GEO", "canonical": "NEAR_ME"},
        {"surface": "nearest", "slot_type": "GEO", "canonical": "NEAR_ME"},
        {"surface": "closest", "slot_type": "GEO", "canonical": "NEAR_ME"},
        # TEMPORAL
        {"surface": "weekend", "slot_type": "TEMPORAL", "canonical": "WEEKEND"},
        {"surface": "saturday", "slot_type": "TEMPORAL", "canonical": "WEEKEND"},
        {"surface": "sunday", "slot_type": "TEMPORAL", "canonical": "WEEKEND"},
        {"surface": "evening", "slot_type": "TEMPORAL", "canonical": "EVENING"},
        {"surface": "after hours", "slot_type": "TEMPORAL", "canonical": "EVENING"},
        {"surface": "late", "slot_type": "TEMPORAL", "canonical": "EVENING"},
        # MODIFIER
        {"surface": "how many", "slot_type": "MODIFIER", "canonical": "COUNT"},
        {"surface": "per city", "slot_type": "MODIFIER", "canonical": "GROUP_BY_CITY"},
        {"surface": "by city", "slot_type": "MODIFIER", "canonical": "GROUP_BY_CITY"},
        {"surface": "closeness to my city", "slot_type": "MODIFIER",
         "canonical": "ORDER_BY_DISTANCE"},
        {"surface": "sorted by distance", "slot_type": "MODIFIER",
         "canonical": "ORDER_BY_DISTANCE"},
        {"surface": "order by closeness", "slot_type": "MODIFIER",
         "canonical": "ORDER_BY_DISTANCE"},
        # GENDER
        {"surface": "female", "slot_type": "GENDER", "canonical": "F"},
        {"surface": "woman", "slot_type": "GENDER", "canonical": "F"},
        {"surface": "women", "slot_type": "GENDER", "canonical": "F"},
        {"surface": "lady", "slot_type": "GENDER", "canonical": "F"},
        {"surface": "male", "slot_type": "GENDER", "canonical": "M"},
        {"surface": "man", "slot_type": "GENDER", "canonical": "M"},
        {"surface": "men", "slot_type": "GENDER", "canonical": "M"},
        # ENTITY_KIND
        {"surface": "doctor", "slot_type": "ENTITY_KIND", "canonical": "PROVIDER"},
        {"surface": "physician", "slot_type": "ENTITY_KIND", "canonical": "PROVIDER"},
        {"surface": "provider", "slot_type": "ENTITY_KIND", "canonical": "PROVIDER"},
        {"surface": "specialist", "slot_type": "ENTITY_KIND", "canonical": "PROVIDER"},
        {"surface": "clinic", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "location", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "facility", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "facilities", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "office", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "hospital", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
        {"surface": "medical center", "slot_type": "ENTITY_KIND", "canonical": "LOCATION"},
    ]
    for city, _, _ in CITIES:
        entries.append({"surface": city.lower(), "slot_type": "GEO", "canonical": city})
    for language in LANGUAGES:
        entries.append({"surface": language.lower(), "slot_type": "LANGUAGE",
                        "canonical": language})
    return entries


TEMPLATES = [
    {
        "id": "find_providers_by_specialty",
        "required_slots": ["SPECIALTY", "TEMPORAL", "GEO"],
        "optional_slots": ["MODIFIER"],
        "priority": 30,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), "
            "(p)-[:WORKS_AT]->(l:Location) WHERE s.name = {SPECIALTY} "
            "AND opens_during(l.hours, {WINDOW}) RETURN p, l "
            "ORDER BY distance(l.geo, point($lat, $lon)) ASC"
        ),
    },
    {
        "id": "find_providers_by_specialty_gender",
        "required_slots": ["SPECIALTY", "GENDER"],
        "optional_slots": [],
        "priority": 28,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty) "
            "WHERE s.name = {SPECIALTY} AND p.gender = {GENDER} RETURN p"
        ),
    },
    {
        "id": "find_providers_by_specialty_language",
        "required_slots": ["SPECIALTY", "LANGUAGE"],
        "optional_slots": [],
        "priority": 27,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty) "
            "WHERE s.name = {SPECIALTY} AND contains(p.languages, {LANGUAGE}) RETURN p"
        ),
    },
    {
        "id": "find_providers_by_specialty_window",
        "required_slots": ["SPECIALTY", "TEMPORAL"],
        "optional_slots": [],
        "priority": 26,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), "
            "(p)-[:WORKS_AT]->(l:Location) WHERE s.name = {SPECIALTY} "
            "AND opens_during(l.hours, {WINDOW}) RETURN p, l"
        ),
    },
    {
        "id": "find_providers_by_specialty_in_city",
        "required_slots": ["SPECIALTY", "GEO"],
        "optional_slots": [],
        "priority": 25,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), "
            "(p)-[:WORKS_AT]->(l:Location) WHERE s.name = {SPECIALTY} "
            "AND l.city = {CITY} RETURN p, l"
        ),
    },
    {
        "id": "find_providers_by_specialty_near",
        "required_slots": ["SPECIALTY", "GEO"],
        "optional_slots": ["MODIFIER"],
        "priority": 24,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), "
            "(p)-[:WORKS_AT]->(l:Location) WHERE s.name = {SPECIALTY} "
            "RETURN p, l ORDER BY distance(l.geo, point($lat, $lon)) ASC LIMIT {K}"
        ),
    },
    {
        "id": "count_locations_open",
        "required_slots": ["ENTITY_KIND", "TEMPORAL", "MODIFIER"],
        "optional_slots": [],
        "priority": 21,
        "query_pattern": (
            "MATCH (l:Location) WHERE opens_during(l.hours, {WINDOW}) RETURN count(*)"
        ),
    },
    {
        "id": "find_locations_in_city",
        "required_slots": ["ENTITY_KIND", "GEO"],
        "optional_slots": [],
        "priority": 19,
        "query_pattern": "MATCH (l:Location) WHERE l.city = {CITY} RETURN l",
    },
    {
        "id": "find_locations_open",
        "required_slots": ["ENTITY_KIND", "TEMPORAL"],
        "optional_slots": [],
        "priority": 18,
        "query_pattern": (
            "MATCH (l:Location) WHERE opens_during(l.hours, {WINDOW}) RETURN l"
        ),
    },
    {
        "id": "nearest_locations",
        "required_slots": ["ENTITY_KIND", "GEO"],
        "optional_slots": ["MODIFIER"],
        "priority": 17,
        "query_pattern": (
            "MATCH (l:Location) RETURN l "
            "ORDER BY distance(l.geo, point({LAT}, {LON})) ASC LIMIT {K}"
        ),
    },
    {
        "id": "count_providers_group_by",
        "required_slots": ["SPECIALTY", "MODIFIER"],
        "optional_slots": [],
        "priority": 15,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), "
            "(p)-[:WORKS_AT]->(l:Location) WHERE s.name = {SPECIALTY} "
            "RETURN l.city, count(p)"
        ),
    },
    {
        "id": "find_providers_by_language",
        "required_slots": ["LANGUAGE"],
        "optional_slots": ["ENTITY_KIND"],
        "priority": 12,
        "query_pattern": (
            "MATCH (p:Provider) WHERE contains(p.languages, {LANGUAGE}) RETURN p"
        ),
    },
    {
        "id": "list_providers_by_specialty",
        "required_slots": ["SPECIALTY"],
        "optional_slots": [],
        "priority": 10,
        "query_pattern": (
            "MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty) "
            "WHERE s.name = {SPECIALTY} RETURN p"
        ),
    },
]

CONFIG = {
    "data_dir": ".",
    "ontology_path": "ontology.json",
    "templates_path": "templates.json",
    "lexicon_path": "lexicon.json",
    "w_struct": 0.6,
    "w_text": 0.3,
    "w_prox": 0.1,
    "confidence_floor": 0.5,
    "host": "127.0.0.1",
    "port": 8747,
    "k": 10,
    "lenient": False,
}

BM25_MICRO = {
    "docs": [
        "pediatrics clinic open saturday",
        "cardiology heart clinic downtown",
        "pediatrics cardiology saturday clinic hours",
    ],
    "query": "pediatrics saturday",
}

# --------------------------------------------------------------------------
# Seeded record generation
# --------------------------------------------------------------------------


def make_locations(rng: random.Random) -> list[dict]:
    locations = []
    used_suffixes: dict[str, list[str]] = {}
    for i in range(N_LOCATIONS):
        city, base_lat, base_lon = CITIES[i % len(CITIES)]
        remaining = [s for s in LOCATION_SUFFIXES if s not in used_suffixes.get(city, [])]
        suffix = remaining[rng.randrange(len(remaining))]
        used_suffixes.setdefault(city, []).append(suffix)
        lat = round(base_lat + rng.uniform(-0.02, 0.02), 6)
        lon = round(base_lon + rng.uniform(-0.02, 0.02), 6)

        close = rng.choice(["17:00", "17:00", "18:00"])
        evening = rng.random() < 0.3
        if evening:
            close = rng.choice(["20:00", "21:00"])
        hours = [{"day": day, "open": "08:00", "close": close}
                 for day in ("mon", "tue", "wed", "thu", "fri")]
        if rng.random() < 0.45:
            hours.append({"day": "sat", "open": "09:00", "close": "14:00"})
        if rng.random() < 0.3:
            hours.append({"day": "sun", "open": "10:00", "close": "16:00"})

        departments = sorted(rng.sample(DEPARTMENTS, k=rng.randrange(2, 6)))
        locations.append({
            "id": f"loc-{i + 1:03d}",
            "name": f"{city} {suffix}",
            "city": city,
            "geo": {"lat": lat, "lon": lon},
            "hours": hours,
            "departments": departments,
        })
    # Two deliberate edge cases: an end-of-day close ("24:00" normalizes to
    # minute 1440) and an overnight interval that splits across midnight.
    locations[3]["hours"].append({"day": "sun", "open": "10:00", "close": "24:00"})
    locations[5]["hours"] = [h for h in locations[5]["hours"] if h["day"] != "fri"] + [
        {"day": "fri", "open": "08:00", "close": "17:00"},
        {"day": "fri", "open": "22:00", "close": "02:00"},
    ]
    return locations


def weekend_open(location: dict) -> bool:
    """Brute-force weekend test straight off the JSONL hours entries."""
    for entry in location["hours"]:
        day = entry["day"]
        open_min = _minutes(entry["open"])
        close_min = 1440 if entry["close"] in ("24:00", "00:00") else _minutes(entry["close"])
        if close_min < open_min:  # crosses midnight: tail + next-day head
            if day in ("sat", "sun") or _next_day(day) in ("sat", "sun"):
                return True
        elif day in ("sat", "sun"):
            return True
    return False


def _minutes(text: str) -> int:
    h, m = text.split(":")
    return int(h) * 60 + int(m)


def _next_day(day: str) -> str:
    order = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"]
    return order[(order.index(day) + 1) % 7]


def make_providers(rng: random.Random, locations: list[dict]) -> list[dict]:
    pairs = [(f, l) for f in FIRST_NAMES for l in LAST_NAMES]
    chosen = rng.sample(range(len(pairs)), N_PROVIDERS)
    specialty_names = [name for name, _ in SPECIALTIES]
    weekend_location_ids = [loc["id"] for loc in locations if weekend_open(loc)]
    city_of = {loc["id"]: loc["city"] for loc in locations}

    providers = []
    for i in range(N_PROVIDERS):
        first, last = pairs[chosen[i]]
        specialties = [specialty_names[i % len(specialty_names)]]
        if rng.random() < 0.4:
            extra = specialty_names[rng.randrange(len(specialty_names))]
            if extra not in specialties:
                specialties.append(extra)

        if i < len(specialty_names):
            gender = "F"  # every specialty gets at least one woman ...
        elif i < 2 * len(specialty_names):
            gender = "M"  # ... and at least one man
        else:
            roll = rng.random()
            gender = "F" if roll < 0.48 else ("M" if roll < 0.96 else "X")

        languages = ["English"]
        if 100 <= i < 100 + 3 * (len(LANGUAGES) - 1):
            languages.append(LANGUAGES[1 + (i - 100) % (len(LANGUAGES) - 1)])
        elif rng.random() < 0.35:
            languages.append(LANGUAGES[1 + rng.randrange(len(LANGUAGES) - 1)])

        count = 1 + rng.randrange(3)
        picks: list[str] = []
        for idx in rng.sample(range(len(locations)), k=min(10, len(locations))):
            loc_id = locations[idx]["id"]
            if city_of[loc_id] not in {city_of[p] for p in picks}:
                picks.append(loc_id)
            if len(picks) == count:
                break
        # Anchor the flagship example: the first two pediatricians always
        # work somewhere that is open on the weekend.
        if i in (0, len(specialty_names)) and not any(
                p in weekend_location_ids for p in picks):
            picks[0] = weekend_location_ids[i % len(weekend_location_ids)]

        providers.append({
            "id": f"prov-{i + 1:03d}",
            "name": f"Dr. {first} {last}",
            "specialties": specialties,
            "gender": gender,
            "languages": languages,
            "accepting_new_patients": rng.random() < 0.75,
            "locations": picks,
        })
    return providers


def make_specialties() -> list[dict]:
    return [
        {"id": f"spec-{i + 1:03d}", "name": name, "synonyms": synonyms}
        for i, (name, synonyms) in enumerate(SPECIALTIES)
    ]


# --------------------------------------------------------------------------
# Query set and labels
# --------------------------------------------------------------------------

# (query, expected class, label rule). Classes: gained = keyword finds
# nothing but the hybrid answers; keyword = the keyword path answers; zero =
# neither path answers; any = no class assertion.
QUERY_PLAN: list[tuple[str, str, tuple | None]] = [
    # hybrid-only wins: specialty synonyms the keyword index cannot see
    ("kids doctor", "gained", ("spec", "Pediatrics")),
    ("heart doctor", "gained", ("spec", "Cardiology")),
    ("skin doctor", "gained", ("spec", "Dermatology")),
    ("bone doctor", "gained", ("spec", "Orthopedics")),
    ("eye doctor", "gained", ("spec", "Ophthalmology")),
    ("stomach doctor", "gained", ("spec", "Gastroenterology")),
    ("kidney doctor", "gained", ("spec", "Nephrology")),
    ("lung doctor", "gained", ("spec", "Pulmonology")),
    ("foot doctor", "gained", ("spec", "Podiatry")),
    ("back doctor", "gained", ("spec", "Chiropractic")),
    ("family doctor", "keyword", ("spec", "Family Medicine")),
    ("cancer specialist", "gained", ("spec", "Oncology")),
    ("brain doctor", "gained", ("spec", "Neurology")),
    ("hormone doctor", "gained", ("spec", "Endocrinology")),
    ("arthritis doctor", "gained", ("spec", "Rheumatology")),
    ("blood doctor", "gained", ("spec", "Hematology")),
    ("tooth doctor", "gained", ("spec", "Dentistry")),
    ("vein doctor", "gained", ("spec", "Vascular Surgery")),
    ("plastic surgeon", "keyword", ("spec", "Plastic Surgery")),
    ("infection specialist", "gained", ("spec", "Infectious Disease")),
    ("newborn specialist", "gained", ("spec", "Neonatology")),
    ("senior doctor", "gained", ("spec", "Geriatrics")),
    ("vision doctor", "gained", ("spec", "Optometry")),
    ("pregnancy doctor", "gained", ("spec", "Obstetrics")),
    ("ent doctor", "gained", ("spec", "Otolaryngology")),
    ("general practitioner", "gained", ("spec", "Family Medicine")),
    ("rehab specialist", "gained", ("spec", "Physical Medicine")),
    ("sports doctor", "keyword", ("spec", "Sports Medicine")),
    ("nerve specialist", "gained", ("spec", "Neurology")),
    ("diabetes doctor", "gained", ("spec", "Endocrinology")),
    ("allergy doctor", "keyword", ("spec", "Allergy and Immunology")),
    # semantic time windows
    ("pediatrician open on the weekend", "gained", ("spec_window", "Pediatrics", "WEEKEND")),
    ("cardiologist open on weekends", "gained", ("spec_window", "Cardiology", "WEEKEND")),
    ("dermatologist available in the evening", "gained",
     ("spec_window", "Dermatology", "EVENING")),
    ("kids doctor open saturday", "gained", ("spec_window", "Pediatrics", "WEEKEND")),
    ("heart doctor open sunday", "gained", ("spec_window", "Cardiology", "WEEKEND")),
    ("eye doctor open in the evening", "gained", ("spec_window", "Ophthalmology", "EVENING")),
    ("facilities open on the weekend", "gained", ("window_locs", "WEEKEND")),
    ("locations open on the weekend", "gained", ("window_locs", "WEEKEND")),
    # proximity phrasing (no coordinates in the replay, so these fall back
    # to the plain specialty listing -- still answers where keywords fail)
    ("pediatrician near me", "gained", ("spec", "Pediatrics")),
    ("cardiologist near me", "gained", ("spec", "Cardiology")),
    ("foot doctor nearby", "gained", ("spec", "Podiatry")),
    ("psychiatrist near me", "gained", ("spec", "Psychiatry")),
    ("childrens doctor near me", "gained", ("spec", "Pediatrics")),
    # gender constraints live only in the graph
    ("female pediatrician", "gained", ("spec_gender", "Pediatrics", "F")),
    ("female cardiologist", "gained", ("spec_gender", "Cardiology", "F")),
    ("male dermatologist", "gained", ("spec_gender", "Dermatology", "M")),
    ("female heart doctor", "gained", ("spec_gender", "Cardiology", "F")),
    # group-by / aggregate questions
    ("how many pediatricians per city", "gained", None),
    ("how many cardiologists per city", "gained", None),
    ("how many dermatologists by city", "gained", None),
    ("how many facilities are open on the weekend", "gained", None),
    # typo'd questions: spell correction feeds both paths
    ("pediatrican near me", "gained", ("spec", "Pediatrics")),
    ("cardiologst near me", "gained", ("spec", "Cardiology")),
    ("dermatolgist open on the weekend", "gained", ("spec_window", "Dermatology", "WEEKEND")),
    # keyword-friendly: city, name, department, language, exact specialty
    ("crestline clinic", "keyword", ("city_locs", "Crestline")),
    ("clinics in marwick", "keyword", ("city_locs", "Marwick")),
    ("lakemont medical center", "keyword", ("city_locs", "Lakemont")),
    ("clinics in ostenholm", "keyword", ("city_locs", "Ostenholm")),
    ("harrowgate hospital", "keyword", ("city_locs", "Harrowgate")),
    ("clinics in sablewood", "keyword", ("city_locs", "Sablewood")),
    ("vernhill medical offices", "keyword", ("city_locs", "Vernhill")),
    ("clinics in quarrystone", "keyword", ("city_locs", "Quarrystone")),
    ("clinics in telfair", "keyword", ("city_locs", "Telfair")),
    ("clinics in pinevale", "keyword", ("city_locs", "Pinevale")),
    ("dr holloway", "keyword", ("lastname", "Holloway")),
    ("dr nakamura", "keyword", ("lastname", "Nakamura")),
    ("dr sandoval", "keyword", ("lastname", "Sandoval")),
    ("dr vasquez", "keyword", ("lastname", "Vasquez")),
    ("pediatrics", "keyword", ("spec", "Pediatrics")),
    ("cardiology doctors", "keyword", ("spec", "Cardiology")),
    ("dermatology", "keyword", ("spec", "Dermatology")),
    ("oncology", "keyword", ("spec", "Oncology")),
    ("radiology", "keyword", ("dept", "Radiology")),
    ("pharmacy", "keyword", ("dept", "Pharmacy")),
    ("imaging center", "keyword", ("dept", "Imaging")),
    ("dialysis", "keyword", ("dept", "Dialysis")),
    ("sleep center", "keyword", ("dept", "Sleep Center")),
    ("spanish speaking doctor", "keyword", ("lang", "Spanish")),
    ("mandarin speaking pediatrician", "keyword", ("spec_lang", "Pediatrics", "Mandarin")),
    ("russian doctor", "keyword", ("lang", "Russian")),
    ("tagalog speaking doctors", "keyword", ("lang", "Tagalog")),
    ("armenian speaking doctor", "keyword", ("lang", "Armenian")),
    ("korean speaking heart doctor", "keyword", ("spec_lang", "Cardiology", "Korean")),
    ("pediatrics in crestline", "keyword", ("spec_city", "Pediatrics", "Crestline")),
    ("cardiology in marwick", "keyword", ("spec_city", "Cardiology", "Marwick")),
    ("dermatology doctors in lakemont", "keyword",
     ("spec_city", "Dermatology", "Lakemont")),
    ("mental health doctor", "keyword", ("spec", "Psychiatry")),
    ("womens health doctor", "keyword", ("spec", "Gynecology")),
    # nothing anywhere: out-of-domain noise stays zero under both paths
    ("hello world", "zero", None),
    ("parking validation", "zero", None),
    ("gift shop", "zero", None),
    ("wifi password", "zero", None),
    ("cafeteria menu", "zero", None),
    ("billing questions", "zero", None),
    ("helicopter pad", "zero", None),
    ("yoga classes", "zero", None),
    ("open on the weekend", "zero", None),
    ("facilities near me", "zero", None),
    # unconstrained specialty phrasings, no class assertion
    ("heart specialist evening", "any", ("spec_window", "Cardiology", "EVENING")),
]


def location_records_by_id(locations: list[dict]) -> dict[str, dict]:
    return {loc["id"]: loc for loc in locations}


def evening_open(location: dict) -> bool:
    for entry in location["hours"]:
        open_min = _minutes(entry["open"])
        close_min = 1440 if entry["close"] in ("24:00", "00:00") else _minutes(entry["close"])
        spans = [(entry["day"], open_min, close_min)]
        if close_min < open_min:
            spans = [(entry["day"], open_min, 1440), (_next_day(entry["day"]), 0, close_min)]
        for _, lo, hi in spans:
            if max(lo, 17 * 60) < min(hi, 21 * 60):
                return True
    return False


def label_ids(rule: tuple, providers: list[dict], locations: list[dict]) -> set[str]:
    """Brute-force answer set for one labeled query."""
    by_id = location_records_by_id(locations)
    kind = rule[0]
    if kind == "spec":
        return {p["id"] for p in providers if rule[1] in p["specialties"]}
    if kind == "spec_window":
        test = weekend_open if rule[2] == "WEEKEND" else evening_open
        return {p["id"] for p in providers if rule[1] in p["specialties"]
                and any(test(by_id[loc]) for loc in p["locations"])}
    if kind == "spec_gender":
        return {p["id"] for p in providers
                if rule[1] in p["specialties"] and p["gender"] == rule[2]}
    if kind == "spec_lang":
        return {p["id"] for p in providers
                if rule[1] in p["specialties"] and rule[2] in p["languages"]}
    if kind == "spec_city":
        return {p["id"] for p in providers if rule[1] in p["specialties"]
                and any(by_id[loc]["city"] == rule[2] for loc in p["locations"])}
    if kind == "lang":
        return {p["id"] for p in providers if rule[1] in p["languages"]}
    if kind == "city_locs":
        return {loc["id"] for loc in locations if loc["city"] == rule[1]}
    if kind == "dept":
        return {loc["id"] for loc in locations if rule[1] in loc["departments"]}
    if kind == "lastname":
        return {p["id"] for p in providers if p["name"].split()[-1] == rule[1]}
    if kind == "window_locs":
        test = weekend_open if rule[1] == "WEEKEND" else evening_open
        return {loc["id"] for loc in locations if test(loc)}
    raise ValueError(f"unknown label rule {rule!r}")


# --------------------------------------------------------------------------
# Flagship-question oracle
# --------------------------------------------------------------------------

def haversine(lat1, lon1, lat2, lon2) -> float:
    phi1, lam1, phi2, lam2 = map(math.radians, (lat1, lon1, lat2, lon2))
    h = (math.sin((phi2 - phi1) / 2) ** 2
         + math.cos(phi1) * math.cos(phi2) * math.sin((lam2 - lam1) / 2) ** 2)
    return 2 * 6371.0 * math.asin(math.sqrt(h))


def flagship_expected(providers: list[dict], locations: list[dict],
                      lat: float, lon: float) -> list[str]:
    """Pediatricians with a weekend-open workplace, nearest such workplace first."""
    by_id = location_records_by_id(locations)
    ranked = []
    for p in providers:
        if "Pediatrics" not in p["specialties"]:
            continue
        weekend_locs = [by_id[loc] for loc in p["locations"] if weekend_open(by_id[loc])]
        if not weekend_locs:
            continue
        best = min(haversine(lat, lon, loc["geo"]["lat"], loc["geo"]["lon"])
                   for loc in weekend_locs)
        ranked.append((best, p["id"]))
    ranked.sort()
    return [pid for _, pid in ranked]


# --------------------------------------------------------------------------
# Writing and verification
# --------------------------------------------------------------------------

def write_jsonl(path: Path, records: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def write_json(path: Path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def generate(out_dir: Path) -> dict:
    rng = random.Random(SEED)
    specialties = make_specialties()
    locations = make_locations(rng)
    providers = make_providers(rng, locations)

    out_dir.mkdir(parents=True, exist_ok=True)
    write_jsonl(out_dir / "specialties.jsonl", specialties)
    write_jsonl(out_dir / "locations.jsonl", locations)
    write_jsonl(out_dir / "providers.jsonl", providers)
    write_json(out_dir / "ontology.json", ONTOLOGY)
    write_json(out_dir / "lexicon.json", static_lexicon_entries())
    write_json(out_dir / "templates.json", TEMPLATES)
    write_json(out_dir / "config.json", CONFIG)
    write_json(out_dir / "bm25_micro.json", BM25_MICRO)

    with open(out_dir / "queries.txt", "w", encoding="utf-8") as fh:
        for query, _, _ in QUERY_PLAN:
            fh.write(query + "\n")
    with open(out_dir / "labels.tsv", "w", encoding="utf-8") as fh:
        for query, _, rule in QUERY_PLAN:
            if rule is None:
                continue
            ids = sorted(label_ids(rule, providers, locations))
            if ids:
                fh.write(f"{query}\t{','.join(ids)}\n")
    return {"providers": providers, "locations": locations, "specialties": specialties}


def verify(out_dir: Path, records: dict) -> None:
    from fdl.config import load_config
    from fdl.evalharness import load_labels, load_queries, run_eval
    from fdl.ingest import RecordKind, build_graph, load_records
    from fdl.keyword_index import build_index
    from fdl.ontology import load_ontology
    from fdl.pipeline import Engine

    config = load_config(out_dir / "config.json")
    ontology = load_ontology(config.ontology_path)
    graph, report = build_graph(
        load_records(out_dir / "providers.jsonl", RecordKind.PROVIDER),
        load_records(out_dir / "locations.jsonl", RecordKind.LOCATION),
        load_records(out_dir / "specialties.jsonl", RecordKind.SPECIALTY),
        ontology,
    )
    assert report.ok, f"fixture graph not clean: {report.to_json()}"
    config.snapshot_dir.mkdir(parents=True, exist_ok=True)
    graph.save(config.graph_snapshot_path)
    build_index(graph).save(config.index_snapshot_path)
    engine = Engine.from_config(config)

    # Flagship question: exact provider set in exact distance order, with a
    # silent keyword path.
    assert engine.keyword_search(FLAGSHIP_QUESTION, 50) == [], (
        "keyword path unexpectedly answers the flagship question")
    expected = flagship_expected(records["providers"], records["locations"],
                                 TEST_LAT, TEST_LON)
    assert 4 <= len(expected) <= 12, f"flagship answer count off: {len(expected)}"
    assert engine.corrected_tokens(FLAGSHIP_QUESTION) == [
        "what", "pediatrician", "are", "open", "on", "the", "weekend", "near", "me",
    ], f"flagship tokens drifted: {engine.corrected_tokens(FLAGSHIP_QUESTION)}"
    response = engine.search(FLAGSHIP_QUESTION, lat=TEST_LAT, lon=TEST_LON, k=50)
    got = [r["entity_id"] for r in response["results"]]
    assert got == expected, f"flagship mismatch:\n  got  {got}\n  want {expected}"
    assert response["interpretation"]["template_id"] == "find_providers_by_specialty"

    # Per-query class expectations.
    problems = []
    for query, expected_class, _ in QUERY_PLAN:
        kw = len(engine.keyword_search(query, config.k))
        hybrid = len(engine.search(query, k=config.k)["results"])
        if expected_class == "gained" and not (kw == 0 and hybrid > 0):
            problems.append(f"{query!r}: wanted gained, got kw={kw} hybrid={hybrid}")
        elif expected_class == "keyword" and kw == 0:
            problems.append(f"{query!r}: wanted keyword hits, got none")
        elif expected_class == "zero" and not (kw == 0 and hybrid == 0):
            problems.append(f"{query!r}: wanted zero, got kw={kw} hybrid={hybrid}")
    assert not problems, "query plan violations:\n  " + "\n  ".join(problems)

    queries = load_queries(out_dir / "queries.txt")
    labels = load_labels(out_dir / "labels.tsv")
    assert len(queries) == 100, f"query set holds {len(queries)} queries, wanted 100"
    eval_report, _ = run_eval(engine, queries, labels, k=config.k)
    assert eval_report.gained >= 22, f"gained only {eval_report.gained}"
    assert eval_report.zero_result_hybrid <= eval_report.zero_result_keyword
    assert eval_report.precision_at_5_hybrid > eval_report.precision_at_5_keyword, (
        f"precision@5 hybrid {eval_report.precision_at_5_hybrid} vs "
        f"keyword {eval_report.precision_at_5_keyword}")
    print(f"verified: gained={eval_report.gained} "
          f"zero_kw={eval_report.zero_result_keyword} "
          f"zero_hybrid={eval_report.zero_result_hybrid} "
          f"p5_kw={eval_report.precision_at_5_keyword:.3f} "
          f"p5_hybrid={eval_report.precision_at_5_hybrid:.3f} "
          f"flagship={len(expected)} providers")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(REPO_ROOT / "data"))
    parser.add_argument("--skip-verify", action="store_true")
    args = parser.parse_args()
    out_dir = Path(args.out)
    records = generate(out_dir)
    print(f"wrote fixtures to {out_dir}")
    if not args.skip_verify:
        verify(out_dir, records)


if __name__ == "__main__":
    main()
