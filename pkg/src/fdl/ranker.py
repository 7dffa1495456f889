"""Merge graph-path and keyword-path hits into one ranked, deduplicated list.

Every entity from either path survives the merge (the coverage-superset
guarantee). With a trusted interpretation the score is a weighted sum of a
structural indicator, min-max-normalized BM25, and a proximity feature; with
a weak or absent interpretation the keyword ranking leads and graph-only
entities are appended after every keyword hit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class InvalidPolicy(Exception):
    pass


class Source(str, Enum):
    KG = "kg"
    KEYWORD = "keyword"
    BOTH = "both"


@dataclass(frozen=True)
class MergePolicy:
    w_struct: float = 0.6
    w_text: float = 0.3
    w_prox: float = 0.1
    confidence_floor: float = 0.5

    def __post_init__(self) -> None:
        weights = (self.w_struct, self.w_text, self.w_prox)
        if any(w < 0 for w in weights):
            raise InvalidPolicy("weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise InvalidPolicy(f"weights must sum to 1, got {sum(weights)}")
        if not 0.0 <= self.confidence_floor <= 1.0:
            raise InvalidPolicy("confidence floor must lie in [0, 1]")


@dataclass
class KgHit:
    entity_ref: int
    distance_km: Optional[float] = None


@dataclass
class RankedResult:
    entity_ref: int
    score: float
    source: Source
    features: dict = field(default_factory=dict)


def normalize_text_scores(scores: list[float]) -> list[float]:
    """Min-max normalize; a singleton or all-equal list maps to all ones."""
    if not scores:
        return []
    low, high = min(scores), max(scores)
    if high == low:
        return [1.0] * len(scores)
    return [(s - low) / (high - low) for s in scores]


def proximity_feature(d_km: float) -> float:
    """1 at the user's location, half at 10 km, decaying with distance."""
    if d_km < 0:
        raise ValueError("distance must be non-negative")
    return 1.0 / (1.0 + d_km / 10.0)


def merge(
    confidence: float,
    kg_results: list[KgHit],
    kw_results: list[tuple[int, float]],
    policy: MergePolicy = MergePolicy(),
) -> list[RankedResult]:
    """Union both result lists, sorted by (score desc, entity_ref asc).

    ``kg_results`` are entity refs in query order with optional distances;
    ``kw_results`` carry raw BM25 scores. Entities found by both paths keep
    the best value of each feature.
    """
    text_norms = normalize_text_scores([s for _, s in kw_results])
    merged: dict[int, RankedResult] = {}

    for hit in kg_results:
        features = {"structural": 1, "text_norm": 0.0}
        if hit.distance_km is not None:
            features["proximity"] = proximity_feature(hit.distance_km)
        existing = merged.get(hit.entity_ref)
        if existing is None:
            merged[hit.entity_ref] = RankedResult(hit.entity_ref, 0.0, Source.KG, features)
        elif "proximity" in features:
            best = max(existing.features.get("proximity", 0.0), features["proximity"])
            existing.features["proximity"] = best

    raw_bm25: dict[int, float] = {}
    for (entity_ref, raw_score), text_norm in zip(kw_results, text_norms):
        raw_bm25[entity_ref] = max(raw_bm25.get(entity_ref, 0.0), raw_score)
        existing = merged.get(entity_ref)
        if existing is None:
            merged[entity_ref] = RankedResult(
                entity_ref, 0.0, Source.KEYWORD,
                {"structural": 0, "text_norm": text_norm})
        else:
            existing.source = Source.BOTH
            existing.features["text_norm"] = max(existing.features["text_norm"], text_norm)

    keyword_led = confidence < policy.confidence_floor
    for result in merged.values():
        features = result.features
        if keyword_led:
            # A weak interpretation must not bury keyword hits: rank by raw
            # BM25 and append graph-only entities (score 0) after every hit.
            features = dict(features, structural=0)
            result.features = features
            result.score = raw_bm25.get(result.entity_ref, 0.0)
        else:
            result.score = (
                policy.w_struct * features["structural"]
                + policy.w_text * features["text_norm"]
                + policy.w_prox * features.get("proximity", 0.0)
            )
    ordered = sorted(merged.values(), key=lambda r: (-r.score, r.entity_ref))
    return ordered
