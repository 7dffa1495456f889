"""Typed lexicons and dictionary-based slot extraction.

Surface forms (single words or phrases) map to a slot type and a canonical
value. Extraction is a greedy longest-match-first scan over token n-grams;
accepted spans never overlap. A token also matches a lexicon word if it only
differs by a trailing plural "s", so "pediatricians" hits "pediatrician".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import product


class SlotType(str, Enum):
    SPECIALTY = "SPECIALTY"
    TEMPORAL = "TEMPORAL"
    GEO = "GEO"
    LANGUAGE = "LANGUAGE"
    GENDER = "GENDER"
    ENTITY_KIND = "ENTITY_KIND"
    MODIFIER = "MODIFIER"


class LexiconError(Exception):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    slot_type: SlotType
    canonical: str


@dataclass(frozen=True)
class SlotCandidate:
    start: int           # token span, end exclusive
    end: int
    slot_type: SlotType
    canonical: str
    matched_text: str


class Lexicon:
    """Surface-form dictionary keyed by word tuples."""

    def __init__(self, entries: list[LexiconEntry]) -> None:
        self._by_words: dict[tuple[str, ...], LexiconEntry] = {}
        self.max_words = 0
        for entry in entries:
            surface = entry.surface.strip()
            if not surface:
                raise LexiconError("empty surface form")
            if surface != surface.lower():
                raise LexiconError(f"surface form {surface!r} is not lowercase")
            words = tuple(surface.split())
            self._by_words[words] = entry
            self.max_words = max(self.max_words, len(words))

    def __len__(self) -> int:
        return len(self._by_words)

    def entries(self) -> list[LexiconEntry]:
        return sorted(self._by_words.values(),
                      key=lambda e: (e.slot_type.value, e.surface))

    def words(self) -> set[str]:
        """Individual words of every surface form (for the spell vocabulary)."""
        return {word for words in self._by_words for word in words}

    def lookup(self, tokens: tuple[str, ...]) -> LexiconEntry | None:
        """Exact word-tuple lookup with a per-word plural-"s" fallback."""
        exact = self._by_words.get(tokens)
        if exact is not None:
            return exact
        alternatives = []
        for token in tokens:
            forms = [token]
            if token.endswith("s") and len(token) > 1:
                forms.append(token[:-1])
            alternatives.append(forms)
        for combo in product(*alternatives):
            if combo == tokens:
                continue
            entry = self._by_words.get(combo)
            if entry is not None:
                return entry
        return None


def extract(tokens: list[str], lexicon: Lexicon) -> list[SlotCandidate]:
    """Greedy longest-match-first scan; candidates ordered by span start."""
    taken = [False] * len(tokens)
    found: list[SlotCandidate] = []
    for size in range(min(lexicon.max_words, len(tokens)), 0, -1):
        for start in range(0, len(tokens) - size + 1):
            end = start + size
            if any(taken[start:end]):
                continue
            entry = lexicon.lookup(tuple(tokens[start:end]))
            if entry is None:
                continue
            for i in range(start, end):
                taken[i] = True
            found.append(SlotCandidate(
                start=start, end=end,
                slot_type=entry.slot_type,
                canonical=entry.canonical,
                matched_text=" ".join(tokens[start:end]),
            ))
    found.sort(key=lambda c: c.start)
    return found


def load_lexicon(path, specialties=None) -> Lexicon:
    """Load ``lexicon.json`` and fold in specialty names and synonyms.

    ``specialties`` is the record list from ``specialties.jsonl``; each name
    (lowercased) and each synonym becomes a SPECIALTY entry whose canonical
    value is the specialty name as written in the data.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    entries = [
        LexiconEntry(item["surface"], SlotType(item["slot_type"]), item["canonical"])
        for item in raw
    ]
    for record in specialties or []:
        entries.append(LexiconEntry(record.name.lower(), SlotType.SPECIALTY, record.name))
        for synonym in record.synonyms:
            entries.append(LexiconEntry(synonym, SlotType.SPECIALTY, record.name))
    return Lexicon(entries)
