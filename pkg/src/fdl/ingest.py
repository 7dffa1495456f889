"""Load provider/location/specialty fixtures and build the knowledge graph.

Fixture files are line-delimited JSON, one record per non-empty line, with
lowercase snake_case keys matching the record dataclasses below. The builder
is deterministic: the same files always produce the same graph, ids included.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .graph import (
    DAY_INDEX,
    MINUTES_PER_DAY,
    GeoPoint,
    Graph,
    HoursOfOperation,
)
from .ontology import Ontology, Violation, validate


class IngestError(Exception):
    """Base class for ingestion failures."""


class BadTime(IngestError):
    def __init__(self, text: str) -> None:
        self.text = text
        super().__init__(f"bad time of day {text!r}; expected HH:MM with HH 00-23, MM 00-59")


class MalformedLine(IngestError):
    def __init__(self, line_no: int, reason: str) -> None:
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class DanglingReference(IngestError):
    """Strict-mode failure: cross-references or schema violations remain."""

    def __init__(self, report: "IngestReport") -> None:
        self.report = report
        parts = []
        if report.dangling_refs:
            parts.append(f"{len(report.dangling_refs)} dangling reference(s), "
                         f"first: {report.dangling_refs[0]}")
        if report.violations:
            parts.append(f"{len(report.violations)} schema violation(s)")
        super().__init__("; ".join(parts) or "ingest failed")


class RecordKind(Enum):
    PROVIDER = "provider"
    LOCATION = "location"
    SPECIALTY = "specialty"


@dataclass(frozen=True)
class ProviderRecord:
    id: str
    name: str
    specialties: tuple[str, ...]
    gender: Optional[str]
    languages: tuple[str, ...]
    accepting_new_patients: bool
    locations: tuple[str, ...]


@dataclass(frozen=True)
class LocationRecord:
    id: str
    name: str
    city: str
    geo: GeoPoint
    hours: HoursOfOperation
    departments: tuple[str, ...]


@dataclass(frozen=True)
class SpecialtyRecord:
    id: str
    name: str
    synonyms: tuple[str, ...]


@dataclass
class IngestReport:
    counts: dict[str, int] = field(default_factory=dict)
    dangling_refs: list[tuple[str, str]] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.dangling_refs and not self.violations

    def to_json(self) -> dict:
        return {
            "counts": dict(self.counts),
            "dangling_refs": [list(ref) for ref in self.dangling_refs],
            "violations": [
                {"kind": v.kind.value, "subject": v.subject, "detail": v.detail}
                for v in self.violations
            ],
        }


_TIME_RE = re.compile(r"^(\d{2}):(\d{2})$")


def parse_time_of_day(text: str) -> int:
    """Parse ``HH:MM`` into minutes since midnight (0..1439).

    ``24:00`` is rejected here; the ingester maps end-of-day closes to 1440
    before intervals reach this parser.
    """
    match = _TIME_RE.match(text)
    if not match:
        raise BadTime(text)
    hours, minutes = int(match.group(1)), int(match.group(2))
    if hours > 23 or minutes > 59:
        raise BadTime(text)
    return hours * 60 + minutes


def parse_hours(raw: list) -> HoursOfOperation:
    """Turn ``[{"day": "sat", "open": "09:00", "close": "17:00"}, ...]`` into hours.

    A close of ``24:00`` or ``00:00`` means end of day (minute 1440). An
    interval that closes strictly before it opens crosses midnight and is
    split into a tail on its day and a head on the next day.
    """
    intervals: list[tuple[int, int, int]] = []
    for entry in raw:
        day = DAY_INDEX.get(entry["day"])
        if day is None:
            raise BadTime(entry["day"])
        open_min = parse_time_of_day(entry["open"])
        close_text = entry["close"]
        if close_text in ("24:00", "00:00"):
            close_min = MINUTES_PER_DAY
        else:
            close_min = parse_time_of_day(close_text)
        if close_min == open_min:
            raise BadTime(f"{entry['open']}-{entry['close']} (zero length)")
        if close_min < open_min:
            intervals.append((day, open_min, MINUTES_PER_DAY))
            intervals.append(((day + 1) % 7, 0, close_min))
        else:
            intervals.append((day, open_min, close_min))
    return HoursOfOperation(tuple(intervals))


def _require(obj: dict, key: str, typ, line_no: int):
    if key not in obj:
        raise MalformedLine(line_no, f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, typ):
        raise MalformedLine(line_no, f"field {key!r} has wrong type {type(value).__name__}")
    return value


def _string_list(obj: dict, key: str, line_no: int) -> tuple[str, ...]:
    raw = _require(obj, key, list, line_no)
    if not all(isinstance(x, str) for x in raw):
        raise MalformedLine(line_no, f"field {key!r} must be a list of strings")
    return tuple(raw)


def _parse_provider(obj: dict, line_no: int) -> ProviderRecord:
    gender = obj.get("gender")
    if gender is not None and gender not in ("F", "M", "X"):
        raise MalformedLine(line_no, f"gender must be F, M, or X, not {gender!r}")
    return ProviderRecord(
        id=_require(obj, "id", str, line_no),
        name=_require(obj, "name", str, line_no),
        specialties=_string_list(obj, "specialties", line_no),
        gender=gender,
        languages=_string_list(obj, "languages", line_no),
        accepting_new_patients=_require(obj, "accepting_new_patients", bool, line_no),
        locations=_string_list(obj, "locations", line_no),
    )


def _parse_location(obj: dict, line_no: int) -> LocationRecord:
    geo_raw = _require(obj, "geo", dict, line_no)
    try:
        geo = GeoPoint(float(geo_raw["lat"]), float(geo_raw["lon"]))
        hours = parse_hours(_require(obj, "hours", list, line_no))
    except (KeyError, TypeError, ValueError, IngestError) as exc:
        raise MalformedLine(line_no, f"bad geo/hours: {exc}") from exc
    return LocationRecord(
        id=_require(obj, "id", str, line_no),
        name=_require(obj, "name", str, line_no),
        city=_require(obj, "city", str, line_no),
        geo=geo,
        hours=hours,
        departments=_string_list(obj, "departments", line_no),
    )


def _parse_specialty(obj: dict, line_no: int) -> SpecialtyRecord:
    record = SpecialtyRecord(
        id=_require(obj, "id", str, line_no),
        name=_require(obj, "name", str, line_no),
        synonyms=_string_list(obj, "synonyms", line_no),
    )
    if record.name in record.synonyms:
        raise MalformedLine(line_no, f"name {record.name!r} repeated in synonyms")
    if any(s != s.lower() for s in record.synonyms):
        raise MalformedLine(line_no, "synonyms must be lowercase")
    return record


_PARSERS = {
    RecordKind.PROVIDER: _parse_provider,
    RecordKind.LOCATION: _parse_location,
    RecordKind.SPECIALTY: _parse_specialty,
}


def load_records(path, kind: RecordKind) -> list:
    """Parse a JSONL fixture file; fail fast with the 1-based line number."""
    parser = _PARSERS[kind]
    records = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise MalformedLine(line_no, "record is not a JSON object")
            record = parser(obj, line_no)
            if record.id == "":
                raise MalformedLine(line_no, "empty id")
            if record.id in seen_ids:
                raise MalformedLine(line_no, f"duplicate id {record.id!r}")
            seen_ids.add(record.id)
            records.append(record)
    return records


def build_graph(
    providers: list[ProviderRecord],
    locations: list[LocationRecord],
    specialties: list[SpecialtyRecord],
    ontology: Ontology,
    strict: bool = True,
) -> tuple[Graph, IngestReport]:
    """Assemble and freeze the knowledge graph from parsed records.

    Node order is fixed: specialties, then locations (creating Department and
    City nodes on first reference), then providers. Edges follow the source
    records: Provider-HAS_SPECIALTY->Specialty, Provider-WORKS_AT->Location,
    Location-HAS_DEPARTMENT->Department, Location-IN_CITY->City.

    Unresolvable cross-references are collected in the report; when
    ``strict`` they escalate to :class:`DanglingReference`.
    """
    graph = Graph()
    report = IngestReport()

    specialty_ids: dict[str, int] = {}
    for rec in specialties:
        node_id = graph.add_node({"Specialty"}, {
            "id": rec.id, "name": rec.name, "synonyms": list(rec.synonyms),
        })
        specialty_ids[rec.name] = node_id

    location_ids: dict[str, int] = {}
    department_ids: dict[str, int] = {}
    city_ids: dict[str, int] = {}
    for rec in locations:
        node_id = graph.add_node({"Location"}, {
            "id": rec.id, "name": rec.name, "city": rec.city,
            "geo": rec.geo, "hours": rec.hours,
        })
        location_ids[rec.id] = node_id
        for dept in rec.departments:
            if dept not in department_ids:
                department_ids[dept] = graph.add_node({"Department"}, {"name": dept})
            graph.add_edge("HAS_DEPARTMENT", node_id, department_ids[dept], {})
        if rec.city not in city_ids:
            city_ids[rec.city] = graph.add_node({"City"}, {"name": rec.city})
        graph.add_edge("IN_CITY", node_id, city_ids[rec.city], {})

    for rec in providers:
        props: dict = {
            "id": rec.id, "name": rec.name,
            "languages": list(rec.languages),
            "accepting_new_patients": rec.accepting_new_patients,
        }
        if rec.gender is not None:
            props["gender"] = rec.gender
        node_id = graph.add_node({"Provider"}, props)
        for spec_name in rec.specialties:
            target = specialty_ids.get(spec_name)
            if target is None:
                report.dangling_refs.append((rec.id, spec_name))
            else:
                graph.add_edge("HAS_SPECIALTY", node_id, target, {})
        for loc_id in rec.locations:
            target = location_ids.get(loc_id)
            if target is None:
                report.dangling_refs.append((rec.id, loc_id))
            else:
                graph.add_edge("WORKS_AT", node_id, target, {})

    graph.freeze()
    for node in graph.nodes():
        for label in node.labels:
            report.counts[label] = report.counts.get(label, 0) + 1
    for cls in ("Provider", "Location", "Specialty", "Department", "City"):
        report.counts.setdefault(cls, 0)
    report.violations = validate(graph, ontology)
    if strict and not report.ok:
        raise DanglingReference(report)
    return graph, report
