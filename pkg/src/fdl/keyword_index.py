"""Keyword baseline: inverted index over entity text with BM25 ranking.

One document per Provider and per Location node. Document text is a flat bag
of the entity's name, city, specialty names, department names, and language
names; there is no field weighting, which keeps the baseline honest about the
limits of pure string matching. Tokenization is shared with the question
pipeline (:func:`fdl.text.normalize`).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph
from .text import SpellCorrector, normalize

BM25_K1 = 1.2
BM25_B = 0.75


class UnknownDoc(Exception):
    def __init__(self, doc_id: int) -> None:
        super().__init__(f"no document with id {doc_id}")


@dataclass(frozen=True)
class Document:
    doc_id: int
    entity_ref: int
    text: str


@dataclass
class InvertedIndex:
    postings: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    doc_lengths: list[int] = field(default_factory=list)
    entity_refs: list[int] = field(default_factory=list)

    @property
    def n_docs(self) -> int:
        return len(self.doc_lengths)

    @property
    def avgdl(self) -> float:
        if not self.doc_lengths:
            return 0.0
        return sum(self.doc_lengths) / len(self.doc_lengths)

    def terms(self) -> set[str]:
        return set(self.postings)

    def to_json(self) -> dict:
        return {
            "postings": {t: [list(p) for p in plist] for t, plist in self.postings.items()},
            "doc_lengths": list(self.doc_lengths),
            "entity_refs": list(self.entity_refs),
            "N": self.n_docs,
            "avgdl": self.avgdl,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, ensure_ascii=False)
            fh.write("\n")


def entity_text(graph: Graph, node_id: int) -> str:
    """Assemble the searchable text of one entity node."""
    node = graph.node(node_id)
    parts: list[str] = []
    name = node.props.get("name")
    if isinstance(name, str):
        parts.append(name)
    city = node.props.get("city")
    if isinstance(city, str):
        parts.append(city)
    for rel in ("HAS_SPECIALTY", "HAS_DEPARTMENT"):
        for _, neighbor in graph.neighbors(node_id, rel):
            neighbor_name = neighbor.props.get("name")
            if isinstance(neighbor_name, str):
                parts.append(neighbor_name)
    languages = node.props.get("languages")
    if isinstance(languages, list):
        parts.extend(languages)
    return " ".join(parts)


def build_documents(graph: Graph) -> list[Document]:
    docs: list[Document] = []
    for node in graph.nodes():
        if "Provider" in node.labels or "Location" in node.labels:
            docs.append(Document(doc_id=len(docs), entity_ref=node.id,
                                 text=entity_text(graph, node.id)))
    return docs


def build_index(graph: Graph) -> InvertedIndex:
    """Index every Provider and Location document of a frozen graph."""
    index = InvertedIndex()
    for doc in build_documents(graph):
        tokens = normalize(doc.text)
        index.doc_lengths.append(len(tokens))
        index.entity_refs.append(doc.entity_ref)
        for term, tf in sorted(Counter(tokens).items()):
            index.postings.setdefault(term, []).append((doc.doc_id, tf))
    return index


def idf(index: InvertedIndex, term: str) -> float:
    df = len(index.postings.get(term, ()))
    n = index.n_docs
    return math.log((n - df + 0.5) / (df + 0.5) + 1.0)


def bm25(query_tokens: list[str], doc_id: int, index: InvertedIndex) -> float:
    """Okapi BM25 with k1=1.2, b=0.75 and a non-negative idf."""
    if not 0 <= doc_id < index.n_docs:
        raise UnknownDoc(doc_id)
    avgdl = index.avgdl
    if avgdl == 0.0:
        return 0.0
    dl = index.doc_lengths[doc_id]
    score = 0.0
    for term in query_tokens:
        postings = index.postings.get(term)
        if not postings:
            continue
        tf = next((f for d, f in postings if d == doc_id), 0)
        if tf == 0:
            continue
        norm = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / avgdl)
        score += idf(index, term) * tf * (BM25_K1 + 1.0) / norm
    return score


def search_tokens(tokens: list[str], k: int, index: InvertedIndex) -> list[tuple[int, float]]:
    """Rank already-normalized tokens: (entity_ref, score), best first."""
    candidates: set[int] = set()
    for term in tokens:
        candidates.update(d for d, _ in index.postings.get(term, ()))
    scored = [(doc_id, bm25(tokens, doc_id, index)) for doc_id in candidates]
    scored = [(d, s) for d, s in scored if s > 0.0]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [(index.entity_refs[d], s) for d, s in scored[:k]]


def search(
    query: str,
    k: int,
    index: InvertedIndex,
    corrector: Optional[SpellCorrector] = None,
) -> list[tuple[int, float]]:
    """Normalize and spell-correct the query, then rank the top k documents.

    Only documents with a positive score are returned, so an empty list is
    the zero-result condition the evaluation harness counts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tokens = normalize(query)
    if corrector is not None:
        tokens = corrector.correct_all(tokens)
    return search_tokens(tokens, k, index)
