import json

import pytest

from fdl.ingest import (
    BadTime,
    DanglingReference,
    MalformedLine,
    RecordKind,
    build_graph,
    load_records,
    parse_hours,
    parse_time_of_day,
)


def test_parse_time_of_day_examples():
    assert parse_time_of_day("09:00") == 540
    assert parse_time_of_day("00:00") == 0
    assert parse_time_of_day("23:59") == 1439
    for bad in ("25:10", "24:00", "9:00", "12:61", "noon", "", "12-30"):
        with pytest.raises(BadTime):
            parse_time_of_day(bad)


def test_parse_hours_splits_midnight_crossing():
    hours = parse_hours([{"day": "sat", "open": "22:00", "close": "02:00"}])
    assert set(hours.intervals) == {(5, 1320, 1440), (6, 0, 120)}


def test_parse_hours_end_of_day_close():
    assert parse_hours([{"day": "sun", "open": "10:00", "close": "24:00"}]).intervals == \
        ((6, 600, 1440),)
    assert parse_hours([{"day": "mon", "open": "10:00", "close": "00:00"}]).intervals == \
        ((0, 600, 1440),)


def test_load_records_count_matches_fixture_lines(data_dir, provider_records):
    n_lines = sum(1 for line in open(data_dir / "providers.jsonl") if line.strip())
    assert len(provider_records) == n_lines


def test_load_records_empty_file(tmp_path):
    empty = tmp_path / "providers.jsonl"
    empty.write_text("")
    assert load_records(empty, RecordKind.PROVIDER) == []


def test_load_records_malformed_line_number(tmp_path):
    path = tmp_path / "specialties.jsonl"
    good = json.dumps({"id": "s1", "name": "Pediatrics", "synonyms": ["pediatrician"]})
    path.write_text(good + "\n" + good.replace("s1", "s2") + "\n{broken\n")
    with pytest.raises(MalformedLine) as err:
        load_records(path, RecordKind.SPECIALTY)
    assert err.value.line_no == 3


def test_load_records_rejects_duplicate_ids(tmp_path):
    path = tmp_path / "specialties.jsonl"
    line = json.dumps({"id": "s1", "name": "Pediatrics", "synonyms": []})
    path.write_text(line + "\n" + line + "\n")
    with pytest.raises(MalformedLine) as err:
        load_records(path, RecordKind.SPECIALTY)
    assert err.value.line_no == 2


def test_specialty_synonym_invariants(tmp_path):
    path = tmp_path / "specialties.jsonl"
    path.write_text(json.dumps(
        {"id": "s1", "name": "Pediatrics", "synonyms": ["Pediatrician"]}) + "\n")
    with pytest.raises(MalformedLine):
        load_records(path, RecordKind.SPECIALTY)


def test_build_graph_counts_and_edges(provider_records, location_records,
                                      specialty_records, ontology, fixture_graph):
    report_counts = {
        "Provider": len(fixture_graph.nodes_with_label("Provider")),
        "Location": len(fixture_graph.nodes_with_label("Location")),
        "Specialty": len(fixture_graph.nodes_with_label("Specialty")),
    }
    assert report_counts["Provider"] == len(provider_records)
    assert report_counts["Location"] == len(location_records)
    assert report_counts["Specialty"] == len(specialty_records)

    works_at = sum(1 for e in fixture_graph.edges() if e.rel_type == "WORKS_AT")
    assert works_at == sum(len(p.locations) for p in provider_records)
    has_spec = sum(1 for e in fixture_graph.edges() if e.rel_type == "HAS_SPECIALTY")
    assert has_spec == sum(len(p.specialties) for p in provider_records)
    has_dept = sum(1 for e in fixture_graph.edges() if e.rel_type == "HAS_DEPARTMENT")
    assert has_dept == sum(len(l.departments) for l in location_records)
    in_city = sum(1 for e in fixture_graph.edges() if e.rel_type == "IN_CITY")
    assert in_city == len(location_records)


def test_build_graph_edge_bijection(provider_records, location_records,
                                    specialty_records, fixture_graph):
    """Every edge corresponds to exactly one cross-reference, and vice versa."""
    name_of = {n.id: n.props.get("name") for n in fixture_graph.nodes()}
    ext_of = {n.id: n.props.get("id") for n in fixture_graph.nodes()}

    expected = []
    for p in provider_records:
        expected.extend(("HAS_SPECIALTY", p.id, s) for s in p.specialties)
        expected.extend(("WORKS_AT", p.id, loc) for loc in p.locations)
    for l in location_records:
        expected.extend(("HAS_DEPARTMENT", l.id, d) for d in l.departments)
        expected.append(("IN_CITY", l.id, l.city))

    actual = []
    for e in fixture_graph.edges():
        src_ext = ext_of[e.src]
        if e.rel_type == "HAS_SPECIALTY":
            actual.append((e.rel_type, src_ext, name_of[e.dst]))
        elif e.rel_type == "WORKS_AT":
            actual.append((e.rel_type, src_ext, ext_of[e.dst]))
        else:
            actual.append((e.rel_type, src_ext, name_of[e.dst]))
    assert sorted(actual) == sorted(expected)


def test_build_graph_dangling_reference_lenient(specialty_records, location_records,
                                                provider_records, ontology):
    import dataclasses
    broken = dataclasses.replace(provider_records[0],
                                 locations=provider_records[0].locations + ("loc-999",))
    providers = [broken] + list(provider_records[1:])
    graph, report = build_graph(providers, location_records, specialty_records,
                                ontology, strict=False)
    assert (broken.id, "loc-999") in report.dangling_refs


def test_build_graph_dangling_reference_strict(specialty_records, location_records,
                                               provider_records, ontology):
    import dataclasses
    broken = dataclasses.replace(provider_records[0],
                                 specialties=("NoSuchSpecialty",))
    with pytest.raises(DanglingReference):
        build_graph([broken], location_records, specialty_records, ontology)


def test_build_graph_empty_inputs(ontology):
    graph, report = build_graph([], [], [], ontology)
    assert graph.node_count == 0
    assert all(count == 0 for count in report.counts.values())
    assert report.ok


def test_build_graph_deterministic(provider_records, location_records,
                                   specialty_records, ontology):
    g1, _ = build_graph(provider_records, location_records, specialty_records, ontology)
    g2, _ = build_graph(provider_records, location_records, specialty_records, ontology)
    assert g1.to_snapshot() == g2.to_snapshot()
