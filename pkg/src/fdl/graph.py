"""In-memory property graph with a label index.

Nodes carry one or more class labels and a property map; edges are typed and
directed. Ids are dense integers assigned in insertion order, so a graph built
from the same inputs is always identical. After ingestion the graph is frozen;
frozen graphs are immutable and safe for concurrent readers.

Property values are one of: text (str), number (int/float, finite), flag
(bool), text list (list of non-empty str), :class:`GeoPoint`, or
:class:`HoursOfOperation`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union


class GraphError(Exception):
    """Base class for graph construction and lookup errors."""


class EmptyLabels(GraphError):
    def __init__(self) -> None:
        super().__init__("a node needs at least one label")


class UnknownNode(GraphError):
    def __init__(self, node_id: int) -> None:
        self.node_id = node_id
        super().__init__(f"no node with id {node_id}")


class FrozenGraph(GraphError):
    def __init__(self) -> None:
        super().__init__("graph is frozen; mutation is not allowed")


class InvalidProperty(GraphError):
    """A property value violates the value-kind invariants."""


DAY_NAMES = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")
DAY_INDEX = {name: i for i, name in enumerate(DAY_NAMES)}
MINUTES_PER_DAY = 1440


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise InvalidProperty(f"non-finite coordinates ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise InvalidProperty(f"latitude {self.lat} out of range [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise InvalidProperty(f"longitude {self.lon} out of range [-180, 180]")


@dataclass(frozen=True)
class HoursOfOperation:
    """Weekly opening hours as (day, open, close) minute intervals.

    Days are 0 (Monday) through 6 (Sunday); minutes run from 0 to 1440.
    Intervals have positive length and never overlap within a day.
    """

    intervals: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        per_day: dict[int, list[tuple[int, int]]] = {}
        for day, open_min, close_min in self.intervals:
            if day not in range(7):
                raise InvalidProperty(f"day {day} out of range 0..6")
            if not (0 <= open_min < close_min <= MINUTES_PER_DAY):
                raise InvalidProperty(
                    f"interval {open_min}..{close_min} violates 0 <= open < close <= 1440"
                )
            per_day.setdefault(day, []).append((open_min, close_min))
        for day, spans in per_day.items():
            spans.sort()
            for (_, close_a), (open_b, _) in zip(spans, spans[1:]):
                if open_b < close_a:
                    raise InvalidProperty(f"overlapping intervals on {DAY_NAMES[day]}")

    def on_day(self, day: int) -> list[tuple[int, int]]:
        return sorted((o, c) for d, o, c in self.intervals if d == day)


PropertyValue = Union[str, float, int, bool, list, GeoPoint, HoursOfOperation]


class PropertyKind(str, Enum):
    TEXT = "text"
    NUMBER = "number"
    FLAG = "flag"
    TEXT_LIST = "text_list"
    GEO = "geo"
    HOURS = "hours"


def kind_of(value: PropertyValue) -> PropertyKind:
    """Classify a property value, checking the per-kind invariants."""
    # bool is a subclass of int, so flags must be checked first.
    if isinstance(value, bool):
        return PropertyKind.FLAG
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise InvalidProperty(f"non-finite number {value!r}")
        return PropertyKind.NUMBER
    if isinstance(value, str):
        return PropertyKind.TEXT
    if isinstance(value, list):
        for item in value:
            if not isinstance(item, str):
                raise InvalidProperty(f"text list holds non-string {item!r}")
            if item == "":
                raise InvalidProperty("text list holds an empty string")
        return PropertyKind.TEXT_LIST
    if isinstance(value, GeoPoint):
        return PropertyKind.GEO
    if isinstance(value, HoursOfOperation):
        return PropertyKind.HOURS
    raise InvalidProperty(f"unsupported property value {value!r}")


def _checked_props(props: dict[str, PropertyValue]) -> dict[str, PropertyValue]:
    for value in props.values():
        kind_of(value)
    return dict(props)


@dataclass(frozen=True)
class Node:
    id: int
    labels: frozenset[str]
    props: dict[str, PropertyValue]


@dataclass(frozen=True)
class Edge:
    id: int
    rel_type: str
    src: int
    dst: int
    props: dict[str, PropertyValue]


class Direction(Enum):
    OUT = "out"
    IN = "in"
    BOTH = "both"


class Graph:
    """Append-only property graph; freeze after ingestion to share it."""

    def __init__(self) -> None:
        self._nodes: list[Node] = []
        self._edges: list[Edge] = []
        self._by_label: dict[str, list[int]] = {}
        self._out: dict[int, list[int]] = {}
        self._in: dict[int, list[int]] = {}
        self._frozen = False

    # -- construction ------------------------------------------------------

    def add_node(self, labels: set[str] | frozenset[str], props: dict[str, PropertyValue]) -> int:
        if self._frozen:
            raise FrozenGraph()
        if not labels:
            raise EmptyLabels()
        node = Node(id=len(self._nodes), labels=frozenset(labels), props=_checked_props(props))
        self._nodes.append(node)
        for label in node.labels:
            self._by_label.setdefault(label, []).append(node.id)
        self._out[node.id] = []
        self._in[node.id] = []
        return node.id

    def add_edge(self, rel_type: str, src: int, dst: int, props: dict[str, PropertyValue]) -> int:
        if self._frozen:
            raise FrozenGraph()
        for endpoint in (src, dst):
            if not 0 <= endpoint < len(self._nodes):
                raise UnknownNode(endpoint)
        edge = Edge(id=len(self._edges), rel_type=rel_type, src=src, dst=dst,
                    props=_checked_props(props))
        self._edges.append(edge)
        self._out[src].append(edge.id)
        self._in[dst].append(edge.id)
        return edge.id

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- lookups -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def node(self, node_id: int) -> Node:
        if not 0 <= node_id < len(self._nodes):
            raise UnknownNode(node_id)
        return self._nodes[node_id]

    def edge(self, edge_id: int) -> Edge:
        return self._edges[edge_id]

    def nodes(self) -> Iterator[Node]:
        return iter(self._nodes)

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges)

    def nodes_with_label(self, label: str) -> list[Node]:
        """All nodes carrying the label, ascending by id."""
        return [self._nodes[i] for i in self._by_label.get(label, [])]

    def neighbors(
        self,
        node_id: int,
        rel_type: Optional[str] = None,
        direction: Direction = Direction.BOTH,
    ) -> list[tuple[Edge, Node]]:
        """Incident edges and the node on the far end, ascending by edge id.

        ``rel_type`` of None matches every relation type. For BOTH, an edge
        is reported once (a self-loop is not doubled).
        """
        self.node(node_id)
        edge_ids: list[int]
        if direction is Direction.OUT:
            edge_ids = self._out[node_id]
        elif direction is Direction.IN:
            edge_ids = self._in[node_id]
        else:
            edge_ids = sorted(set(self._out[node_id]) | set(self._in[node_id]))
        result = []
        for eid in edge_ids:
            edge = self._edges[eid]
            if rel_type is not None and edge.rel_type != rel_type:
                continue
            other = edge.dst if edge.src == node_id else edge.src
            if direction is Direction.OUT:
                other = edge.dst
            elif direction is Direction.IN:
                other = edge.src
            result.append((edge, self._nodes[other]))
        return result

    # -- snapshot format ---------------------------------------------------

    def to_snapshot(self) -> dict:
        """Plain-JSON form: ``{"nodes": [...], "edges": [...]}``."""
        return {
            "nodes": [
                {
                    "id": n.id,
                    "labels": sorted(n.labels),
                    "props": {k: encode_value(v) for k, v in n.props.items()},
                }
                for n in self._nodes
            ],
            "edges": [
                {
                    "id": e.id,
                    "rel_type": e.rel_type,
                    "src": e.src,
                    "dst": e.dst,
                    "props": {k: encode_value(v) for k, v in e.props.items()},
                }
                for e in self._edges
            ],
        }

    @classmethod
    def from_snapshot(cls, doc: dict) -> "Graph":
        graph = cls()
        for record in doc["nodes"]:
            node_id = graph.add_node(set(record["labels"]),
                                     {k: decode_value(v) for k, v in record["props"].items()})
            if node_id != record["id"]:
                raise GraphError(f"snapshot node ids not dense: expected {node_id}, "
                                 f"found {record['id']}")
        for record in doc["edges"]:
            edge_id = graph.add_edge(record["rel_type"], record["src"], record["dst"],
                                     {k: decode_value(v) for k, v in record["props"].items()})
            if edge_id != record["id"]:
                raise GraphError(f"snapshot edge ids not dense: expected {edge_id}, "
                                 f"found {record['id']}")
        return graph.freeze()

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_snapshot(), fh, ensure_ascii=False, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Graph":
        with open(path, encoding="utf-8") as fh:
            return cls.from_snapshot(json.load(fh))


def encode_value(value: PropertyValue):
    """JSON-encode one property value (see docs for the snapshot format)."""
    if isinstance(value, GeoPoint):
        return {"lat": value.lat, "lon": value.lon}
    if isinstance(value, HoursOfOperation):
        return {"intervals": [[DAY_NAMES[d], o, c] for d, o, c in value.intervals]}
    return value


def decode_value(raw) -> PropertyValue:
    if isinstance(raw, dict):
        if set(raw) == {"lat", "lon"}:
            return GeoPoint(float(raw["lat"]), float(raw["lon"]))
        if set(raw) == {"intervals"}:
            return HoursOfOperation(
                tuple((DAY_INDEX[d], int(o), int(c)) for d, o, c in raw["intervals"])
            )
        raise InvalidProperty(f"unrecognized encoded value {raw!r}")
    return raw
