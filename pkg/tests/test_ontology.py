import pytest

from fdl.graph import Graph
from fdl.ontology import (
    Ontology,
    OntologyError,
    PropertyDecl,
    RelationDecl,
    ViolationKind,
    validate,
)
from fdl.graph import PropertyKind


def mini_ontology() -> Ontology:
    return Ontology(
        classes=frozenset({"Provider", "Location", "Specialty"}),
        relations=(
            RelationDecl("WORKS_AT", "Provider", "Location"),
            RelationDecl("HAS_SPECIALTY", "Provider", "Specialty"),
        ),
        properties=(
            PropertyDecl("Provider", "name", PropertyKind.TEXT, True),
            PropertyDecl("Location", "name", PropertyKind.TEXT, True),
        ),
    )


def test_fixture_graph_validates_cleanly(fixture_graph, ontology):
    assert validate(fixture_graph, ontology) == []


def test_validate_is_idempotent(fixture_graph, ontology):
    assert validate(fixture_graph, ontology) == validate(fixture_graph, ontology)


def test_domain_mismatch_reported():
    g = Graph()
    loc = g.add_node({"Location"}, {"name": "Clinic"})
    spec = g.add_node({"Specialty"}, {"name": "Pediatrics"})
    g.add_edge("HAS_SPECIALTY", loc, spec, {})
    violations = validate(g, mini_ontology())
    assert len(violations) == 1
    assert violations[0].kind is ViolationKind.DOMAIN_MISMATCH
    assert violations[0].subject == 0


def test_range_mismatch_reported():
    g = Graph()
    p = g.add_node({"Provider"}, {"name": "Dr. A"})
    other = g.add_node({"Provider"}, {"name": "Dr. B"})
    g.add_edge("WORKS_AT", p, other, {})
    violations = validate(g, mini_ontology())
    assert [v.kind for v in violations] == [ViolationKind.RANGE_MISMATCH]


def test_missing_required_prop():
    g = Graph()
    g.add_node({"Provider"}, {})
    violations = validate(g, mini_ontology())
    assert [v.kind for v in violations] == [ViolationKind.MISSING_REQUIRED_PROP]


def test_unknown_class_and_wrong_kind():
    g = Graph()
    g.add_node({"Mystery"}, {})
    g.add_node({"Provider"}, {"name": 42})
    kinds = [v.kind for v in validate(g, mini_ontology())]
    assert kinds == [ViolationKind.UNKNOWN_CLASS, ViolationKind.WRONG_PROP_KIND]


def test_violations_ordered_by_subject():
    g = Graph()
    for _ in range(3):
        g.add_node({"Provider"}, {})
    violations = validate(g, mini_ontology())
    assert [v.subject for v in violations] == [0, 1, 2]


def test_undeclared_relation_type():
    g = Graph()
    a = g.add_node({"Provider"}, {"name": "x"})
    b = g.add_node({"Location"}, {"name": "y"})
    g.add_edge("TELEPORTS_TO", a, b, {})
    violations = validate(g, mini_ontology())
    assert [v.kind for v in violations] == [ViolationKind.DOMAIN_MISMATCH]
    assert "TELEPORTS_TO" in violations[0].detail


def test_ontology_rejects_unknown_relation_class():
    with pytest.raises(OntologyError):
        Ontology(
            classes=frozenset({"Provider"}),
            relations=(RelationDecl("WORKS_AT", "Provider", "Ghost"),),
            properties=(),
        )


def test_ontology_rejects_duplicate_property():
    with pytest.raises(OntologyError):
        Ontology(
            classes=frozenset({"Provider"}),
            relations=(),
            properties=(
                PropertyDecl("Provider", "name", PropertyKind.TEXT, True),
                PropertyDecl("Provider", "name", PropertyKind.TEXT, False),
            ),
        )
