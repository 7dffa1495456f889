"""Schema layer for the graph: classes, relations, and property constraints.

The ontology is data, loaded from a JSON file, so the domain can be swapped
without code changes. ``validate`` checks a graph instance against it and
returns violations as values rather than raising; an empty list means the
instance conforms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .graph import Graph, PropertyKind, kind_of


class OntologyError(Exception):
    """The ontology document itself is inconsistent."""


@dataclass(frozen=True)
class RelationDecl:
    rel_type: str
    src_class: str
    dst_class: str


@dataclass(frozen=True)
class PropertyDecl:
    cls: str
    name: str
    kind: PropertyKind
    required: bool


@dataclass(frozen=True)
class Ontology:
    classes: frozenset[str]
    relations: tuple[RelationDecl, ...]
    properties: tuple[PropertyDecl, ...]

    def __post_init__(self) -> None:
        for rel in self.relations:
            for cls in (rel.src_class, rel.dst_class):
                if cls not in self.classes:
                    raise OntologyError(
                        f"relation {rel.rel_type} references unknown class {cls}"
                    )
        seen = set()
        for prop in self.properties:
            key = (prop.cls, prop.name)
            if key in seen:
                raise OntologyError(f"duplicate property declaration {key}")
            seen.add(key)

    def relations_of(self, rel_type: str) -> list[RelationDecl]:
        return [r for r in self.relations if r.rel_type == rel_type]

    def properties_of(self, cls: str) -> list[PropertyDecl]:
        return [p for p in self.properties if p.cls == cls]


class ViolationKind(str, Enum):
    UNKNOWN_CLASS = "UnknownClass"
    DOMAIN_MISMATCH = "DomainMismatch"
    RANGE_MISMATCH = "RangeMismatch"
    MISSING_REQUIRED_PROP = "MissingRequiredProp"
    WRONG_PROP_KIND = "WrongPropKind"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subject: int
    detail: str


def validate(graph: Graph, ontology: Ontology) -> list[Violation]:
    """All schema violations, node violations first, ascending by subject id.

    Each node label is checked independently: it must be a known class, and
    the properties declared for that class must be present (when required)
    with the declared kind. An edge must satisfy the domain and range of at
    least one declaration of its relation type.
    """
    violations: list[Violation] = []
    for node in graph.nodes():
        for label in sorted(node.labels):
            if label not in ontology.classes:
                violations.append(Violation(
                    ViolationKind.UNKNOWN_CLASS, node.id,
                    f"node {node.id} carries unknown class {label}"))
                continue
            for decl in ontology.properties_of(label):
                if decl.name not in node.props:
                    if decl.required:
                        violations.append(Violation(
                            ViolationKind.MISSING_REQUIRED_PROP, node.id,
                            f"node {node.id} ({label}) lacks required property {decl.name}"))
                    continue
                actual = kind_of(node.props[decl.name])
                if actual is not decl.kind:
                    violations.append(Violation(
                        ViolationKind.WRONG_PROP_KIND, node.id,
                        f"node {node.id} ({label}) property {decl.name} is "
                        f"{actual.value}, declared {decl.kind.value}"))
    for edge in graph.edges():
        decls = ontology.relations_of(edge.rel_type)
        src_labels = graph.node(edge.src).labels
        dst_labels = graph.node(edge.dst).labels
        if not decls:
            violations.append(Violation(
                ViolationKind.DOMAIN_MISMATCH, edge.id,
                f"edge {edge.id} has undeclared relation type {edge.rel_type}"))
            continue
        domain_decls = [d for d in decls if d.src_class in src_labels]
        if not domain_decls:
            wanted = ", ".join(sorted({d.src_class for d in decls}))
            violations.append(Violation(
                ViolationKind.DOMAIN_MISMATCH, edge.id,
                f"edge {edge.id} ({edge.rel_type}) source must be {wanted}"))
            continue
        if not any(d.dst_class in dst_labels for d in domain_decls):
            wanted = ", ".join(sorted({d.dst_class for d in domain_decls}))
            violations.append(Violation(
                ViolationKind.RANGE_MISMATCH, edge.id,
                f"edge {edge.id} ({edge.rel_type}) target must be {wanted}"))
    return violations


def load_ontology(path) -> Ontology:
    """Read the ontology JSON file (``classes``, ``relations``, ``properties``)."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        return Ontology(
            classes=frozenset(doc["classes"]),
            relations=tuple(
                RelationDecl(r["type"], r["src"], r["dst"]) for r in doc["relations"]
            ),
            properties=tuple(
                PropertyDecl(p["class"], p["name"], PropertyKind(p["kind"]), bool(p["required"]))
                for p in doc["properties"]
            ),
        )
    except KeyError as exc:
        raise OntologyError(f"ontology file {path} is missing key {exc}") from exc
