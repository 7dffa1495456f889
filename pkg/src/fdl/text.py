"""Question normalization and spell correction.

The same tokenizer feeds the question interpreter and the keyword index, and
both paths correct against the same vocabulary, so coverage differences
between them come from semantics rather than typo handling.
"""

from __future__ import annotations

import string

_STRIP_PUNCT = str.maketrans("", "", string.punctuation)


def normalize(text: str) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace, drop empties."""
    return [token for token in text.lower().translate(_STRIP_PUNCT).split() if token]


def damerau_levenshtein(a: str, b: str, cap: int = 2) -> int:
    """Edit distance with adjacent transpositions, capped.

    Returns cap + 1 as soon as the distance provably exceeds ``cap``.
    """
    if a == b:
        return 0
    if abs(len(a) - len(b)) > cap:
        return cap + 1
    previous2: list[int] = []
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current[j] = min(
                previous[j] + 1,        # deletion
                current[j - 1] + 1,     # insertion
                previous[j - 1] + cost,  # substitution
            )
            if i > 1 and j > 1 and ch_a == b[j - 2] and a[i - 2] == ch_b:
                current[j] = min(current[j], previous2[j - 2] + cost)
        if min(current) > cap:
            return cap + 1
        previous2, previous = previous, current
    return previous[len(b)] if previous[len(b)] <= cap else cap + 1


def correction_threshold(token: str) -> int:
    """One edit for short tokens, two for longer ones."""
    return 1 if len(token) <= 5 else 2


def spell_correct(token: str, vocabulary: frozenset[str] | set[str]) -> str:
    """Known tokens pass through; others snap to the closest vocabulary term.

    A candidate is accepted only within the length-based threshold; ties go
    to the lexicographically smaller term; with no acceptable candidate the
    token is returned unchanged.
    """
    if token in vocabulary:
        return token
    threshold = correction_threshold(token)
    best: str | None = None
    best_distance = threshold + 1
    for term in vocabulary:
        if abs(len(term) - len(token)) > threshold:
            continue
        distance = damerau_levenshtein(token, term, cap=threshold)
        if distance < best_distance or (distance == best_distance
                                        and best is not None and term < best):
            best = term
            best_distance = distance
    if best is not None and best_distance <= threshold:
        return best
    return token


class SpellCorrector:
    """Vocabulary plus a memo cache; correction of a token never changes."""

    def __init__(self, vocabulary: set[str] | frozenset[str]) -> None:
        self.vocabulary = frozenset(vocabulary)
        self._cache: dict[str, str] = {}

    def correct(self, token: str) -> str:
        cached = self._cache.get(token)
        if cached is None:
            cached = spell_correct(token, self.vocabulary)
            self._cache[token] = cached
        return cached

    def correct_all(self, tokens: list[str]) -> list[str]:
        return [self.correct(token) for token in tokens]
