"""The search pipeline shared by the CLI and the HTTP API.

An :class:`Engine` wraps one immutable snapshot (graph, keyword index,
lexicon, templates, merge policy). A search interprets the question, runs the
best executable interpretation against the graph, runs the keyword baseline,
merges both result lists, and renders a response dict. Because the snapshot
never changes and every stage is deterministic, identical requests produce
identical responses (timings aside).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .config import Config
from .gql import evaluate, parse
from .gql.ast import ExprItem, Var
from .gql.errors import EvalError, ParseError
from .gql.evaluator import fn_distance
from .graph import GeoPoint, Graph
from .ingest import SpecialtyRecord
from .keyword_index import InvertedIndex, build_index, search_tokens
from .lexicon import Lexicon, load_lexicon
from .ranker import KgHit, MergePolicy, RankedResult, merge
from .templates import (
    Interpretation,
    Template,
    TemplateError,
    UserContext,
    interpret,
    instantiate,
    load_templates,
)
from .text import SpellCorrector, normalize


class SnapshotMissing(Exception):
    def __init__(self, path) -> None:
        super().__init__(
            f"no graph snapshot at {path}; run `fdl ingest` first")


@dataclass
class KgOutcome:
    """What the graph path produced for one request."""

    interpretation: Optional[Interpretation] = None
    instantiated_query: Optional[str] = None
    hits: list[KgHit] = field(default_factory=list)
    aggregate: Optional[dict] = None


class Engine:
    def __init__(
        self,
        graph: Graph,
        index: InvertedIndex,
        lexicon: Lexicon,
        templates: list[Template],
        policy: MergePolicy,
        default_k: int = 10,
    ) -> None:
        self.graph = graph
        self.index = index
        self.lexicon = lexicon
        self.templates = templates
        self.templates_by_id = {t.id: t for t in templates}
        self.policy = policy
        self.default_k = default_k
        self.vocabulary = frozenset(lexicon.words() | index.terms())
        self.corrector = SpellCorrector(self.vocabulary)
        self._provider_locations: dict[int, list[int]] = {}
        for node in graph.nodes_with_label("Provider"):
            self._provider_locations[node.id] = [
                neighbor.id for _, neighbor in graph.neighbors(node.id, "WORKS_AT")
            ]

    @classmethod
    def from_config(cls, config: Config) -> "Engine":
        if not config.graph_snapshot_path.exists():
            raise SnapshotMissing(config.graph_snapshot_path)
        graph = Graph.load(config.graph_snapshot_path)
        index = build_index(graph)
        specialties = [
            SpecialtyRecord(
                id=str(node.props.get("id", "")),
                name=str(node.props["name"]),
                synonyms=tuple(node.props.get("synonyms", [])),
            )
            for node in graph.nodes_with_label("Specialty")
        ]
        lexicon = load_lexicon(config.lexicon_path, specialties)
        templates = load_templates(config.templates_path)
        return cls(graph, index, lexicon, templates, config.policy, config.k)

    # -- keyword path --------------------------------------------------------

    def corrected_tokens(self, question: str) -> list[str]:
        return self.corrector.correct_all(normalize(question))

    def keyword_search(self, question: str, k: int) -> list[tuple[int, float]]:
        return search_tokens(self.corrected_tokens(question), k, self.index)

    # -- graph path -----------------------------------------------------------

    def run_kg(self, question: str, context: UserContext) -> KgOutcome:
        """Execute the best interpretation that instantiates and evaluates."""
        interpretations = interpret(
            question, self.templates, self.lexicon, self.vocabulary, self.corrector)
        user_point = None
        if context.lat is not None and context.lon is not None:
            user_point = GeoPoint(context.lat, context.lon)
        for interp in interpretations:
            template = self.templates_by_id[interp.template_id]
            params = {name: value for name, value in
                      (("lat", context.lat), ("lon", context.lon), ("k", context.k))
                      if value is not None}
            try:
                query_text = instantiate(interp, template, context)
                ast = parse(query_text)
                table = evaluate(ast, self.graph, params)
            except (TemplateError, ParseError, EvalError):
                continue
            outcome = KgOutcome(interpretation=interp, instantiated_query=query_text)
            if ast.has_aggregates():
                outcome.aggregate = table.to_json()
                return outcome
            var_columns = [
                i for i, item in enumerate(ast.returns)
                if isinstance(item, ExprItem) and isinstance(item.expr, Var)
            ]
            if not var_columns:
                return outcome
            primary = var_columns[0]
            best: dict[int, Optional[float]] = {}
            order: list[int] = []
            for row in table.rows:
                entity = row[primary]
                distance = self._row_distance(row, var_columns, user_point)
                if entity not in best:
                    best[entity] = distance
                    order.append(entity)
                elif distance is not None:
                    previous = best[entity]
                    best[entity] = distance if previous is None else min(previous, distance)
            outcome.hits = [KgHit(entity, best[entity]) for entity in order]
            return outcome
        return KgOutcome()

    def _row_distance(self, row, var_columns, user_point) -> Optional[float]:
        if user_point is None:
            return None
        distances = []
        for column in var_columns:
            node = self.graph.node(row[column])
            geo = node.props.get("geo")
            if isinstance(geo, GeoPoint):
                distances.append(fn_distance(geo, user_point))
        return min(distances) if distances else None

    def entity_distance(self, entity_ref: int, user_point: Optional[GeoPoint]) -> Optional[float]:
        """Fallback display distance: own geo, or nearest workplace."""
        if user_point is None:
            return None
        node = self.graph.node(entity_ref)
        geo = node.props.get("geo")
        if isinstance(geo, GeoPoint):
            return fn_distance(geo, user_point)
        distances = [
            fn_distance(self.graph.node(loc).props["geo"], user_point)
            for loc in self._provider_locations.get(entity_ref, [])
        ]
        return min(distances) if distances else None

    # -- full pipeline ----------------------------------------------------------

    def search(
        self,
        question: str,
        lat: Optional[float] = None,
        lon: Optional[float] = None,
        city: Optional[str] = None,
        k: Optional[int] = None,
    ) -> dict:
        """Interpret, query, search, merge; returns the response dict."""
        started = time.perf_counter()
        k = self.default_k if k is None else k
        context = UserContext(lat=lat, lon=lon, city=city, k=k)
        user_point = GeoPoint(lat, lon) if lat is not None and lon is not None else None

        t0 = time.perf_counter()
        corrected = self.corrected_tokens(question)
        kg = self.run_kg(question, context)
        t_kg = time.perf_counter()
        keyword_hits = self.keyword_search(question, k)
        t_kw = time.perf_counter()
        confidence = kg.interpretation.confidence if kg.interpretation else 0.0
        merged = merge(confidence, kg.hits, keyword_hits, self.policy)
        t_merge = time.perf_counter()

        kg_distance = {hit.entity_ref: hit.distance_km for hit in kg.hits}
        results = []
        if kg.aggregate is not None:
            results.extend(self._aggregate_results(kg.aggregate))
        for ranked in merged:
            results.append(self._entity_result(ranked, kg_distance, user_point))
        results = results[:k]

        response = {
            "query": question,
            "corrected_query": " ".join(corrected),
            "interpretation": self._interpretation_json(kg),
            "results": results,
        }
        if kg.aggregate is not None:
            response["aggregate"] = kg.aggregate
        response["timings_ms"] = {
            "interpret_and_kg": round((t_kg - t0) * 1000.0, 3),
            "keyword": round((t_kw - t_kg) * 1000.0, 3),
            "merge": round((t_merge - t_kw) * 1000.0, 3),
            "total": round((time.perf_counter() - started) * 1000.0, 3),
        }
        return response

    def _interpretation_json(self, kg: KgOutcome) -> Optional[dict]:
        if kg.interpretation is None:
            return None
        return {
            "template_id": kg.interpretation.template_id,
            "bindings": {slot.value: value
                         for slot, value in sorted(kg.interpretation.bindings.items(),
                                                   key=lambda kv: kv[0].value)},
            "confidence": kg.interpretation.confidence,
            "instantiated_query": kg.instantiated_query,
        }

    def _aggregate_results(self, aggregate: dict) -> list[dict]:
        rows = []
        agg_columns = [i for i, name in enumerate(aggregate["columns"])
                       if name.startswith("count(")]
        key_columns = [i for i in range(len(aggregate["columns"])) if i not in agg_columns]
        for row in aggregate["rows"]:
            label = ", ".join(str(row[i]) for i in key_columns)
            value = float(row[agg_columns[0]]) if agg_columns else 0.0
            rows.append({
                "entity_id": "",
                "name": label if label else "all",
                "kind": "aggregate",
                "city": "",
                "score": value,
                "source": "kg",
            })
        return rows

    def _entity_result(self, ranked: RankedResult, kg_distance: dict,
                       user_point: Optional[GeoPoint]) -> dict:
        node = self.graph.node(ranked.entity_ref)
        kind = "provider" if "Provider" in node.labels else "location"
        city = node.props.get("city")
        if not isinstance(city, str):
            city = self._provider_city(ranked.entity_ref, user_point)
        distance = kg_distance.get(ranked.entity_ref)
        if distance is None:
            distance = self.entity_distance(ranked.entity_ref, user_point)
        result = {
            "entity_id": str(node.props.get("id", "")),
            "name": str(node.props.get("name", "")),
            "kind": kind,
            "city": city,
        }
        if distance is not None:
            result["distance_km"] = distance
        result["score"] = ranked.score
        result["source"] = ranked.source.value
        return result

    def _provider_city(self, entity_ref: int, user_point: Optional[GeoPoint]) -> str:
        locations = self._provider_locations.get(entity_ref, [])
        if not locations:
            return ""
        if user_point is not None:
            locations = sorted(
                locations,
                key=lambda loc: fn_distance(self.graph.node(loc).props["geo"], user_point),
            )
        return str(self.graph.node(locations[0]).props.get("city", ""))


def render_response(response: dict) -> str:
    """The one serializer both the CLI and the HTTP server use."""
    return json.dumps(response, ensure_ascii=False, indent=2)
