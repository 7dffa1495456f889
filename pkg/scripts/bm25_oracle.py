#!/usr/bin/env python3
"""Stand-alone BM25 reference implementation.

Deliberately written from the formula, independent of the engine's inverted
index: per-document Counters, no postings lists. Constants k1=1.2, b=0.75,
idf = ln((N - df + 0.5) / (df + 0.5) + 1).

Run directly to score the bundled micro-corpus (data/bm25_micro.json).
"""

import json
import math
import string
import sys
from collections import Counter
from pathlib import Path

K1 = 1.2
B = 0.75

_PUNCT = str.maketrans("", "", string.punctuation)


def tokenize(text: str) -> list[str]:
    return text.lower().translate(_PUNCT).split()


def bm25_scores(docs: list[str], query: str) -> list[float]:
    """Score every document for the query; one float per document."""
    doc_tokens = [tokenize(d) for d in docs]
    n = len(docs)
    lengths = [len(t) for t in doc_tokens]
    avgdl = sum(lengths) / n if n else 0.0
    counters = [Counter(t) for t in doc_tokens]
    df = Counter()
    for counter in counters:
        for term in counter:
            df[term] += 1
    scores = []
    for i in range(n):
        score = 0.0
        for term in tokenize(query):
            tf = counters[i].get(term, 0)
            if tf == 0 or avgdl == 0.0:
                continue
            idf = math.log((n - df[term] + 0.5) / (df[term] + 0.5) + 1.0)
            score += idf * tf * (K1 + 1.0) / (tf + K1 * (1.0 - B + B * lengths[i] / avgdl))
        scores.append(score)
    return scores


if __name__ == "__main__":
    micro_path = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "data" / "bm25_micro.json")
    spec = json.loads(micro_path.read_text(encoding="utf-8"))
    for doc, score in zip(spec["docs"], bm25_scores(spec["docs"], spec["query"])):
        print(f"{score:.12f}  {doc}")
