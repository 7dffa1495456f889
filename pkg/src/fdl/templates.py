"""Pre-built query templates with placeholders, and question interpretation.

A template fires when the slot types extracted from the question cover its
required set. Competing interpretations are ranked by how much of the
question they explain (content-token coverage), then template priority, then
id. Instantiation substitutes canonical slot values and caller-supplied
context (coordinates, city, result count) into the query pattern, quoting
and escaping string values.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .gql.printer import quote_string
from .lexicon import Lexicon, SlotType, extract
from .text import SpellCorrector, normalize

# Tokens that carry no searchable content; "near" is deliberately absent
# because it participates in the "near me" surface form.
STOPWORDS = frozenset({"what", "are", "the", "on", "is", "a", "me", "my", "to", "by"})

NEAR_ME = "NEAR_ME"

_PLACEHOLDER_RE = re.compile(r"\{([A-Z_]+)\}")
_PARAM_RE = re.compile(r"\$([a-z][a-z0-9_]*)")

# Placeholders whose value comes from an extracted slot.
_SLOT_PLACEHOLDERS: dict[str, SlotType] = {
    "SPECIALTY": SlotType.SPECIALTY,
    "WINDOW": SlotType.TEMPORAL,
    "GENDER": SlotType.GENDER,
    "LANGUAGE": SlotType.LANGUAGE,
}
_CONTEXT_PLACEHOLDERS = ("CITY", "LAT", "LON", "K")


class TemplateError(Exception):
    pass


class MissingSlot(TemplateError):
    def __init__(self, placeholder: str) -> None:
        self.placeholder = placeholder
        super().__init__(f"no slot value for placeholder {{{placeholder}}}")


class MissingContext(TemplateError):
    def __init__(self, fieldname: str) -> None:
        self.field = fieldname
        super().__init__(f"question needs the {fieldname!r} context field, "
                         "which the request did not supply")


@dataclass(frozen=True)
class Template:
    id: str
    required_slots: frozenset[SlotType]
    optional_slots: frozenset[SlotType]
    priority: int
    query_pattern: str

    def __post_init__(self) -> None:
        for name in _PLACEHOLDER_RE.findall(self.query_pattern):
            slot = _SLOT_PLACEHOLDERS.get(name)
            if slot is not None:
                if slot not in self.required_slots | self.optional_slots:
                    raise TemplateError(
                        f"template {self.id}: placeholder {{{name}}} has no "
                        f"matching required or optional slot")
            elif name not in _CONTEXT_PLACEHOLDERS:
                raise TemplateError(f"template {self.id}: unknown placeholder {{{name}}}")


@dataclass(frozen=True)
class Interpretation:
    template_id: str
    bindings: dict[SlotType, str]
    confidence: float
    consumed_spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class UserContext:
    """Request-scoped facts a question may rely on."""

    lat: Optional[float] = None
    lon: Optional[float] = None
    city: Optional[str] = None
    k: int = 10


def interpret(
    question: str,
    templates: list[Template],
    lexicon: Lexicon,
    vocabulary: frozenset[str] | set[str],
    corrector: Optional[SpellCorrector] = None,
) -> list[Interpretation]:
    """Normalize, spell-correct, extract slots, and rank matching templates."""
    corrector = corrector or SpellCorrector(vocabulary)
    tokens = corrector.correct_all(normalize(question))
    candidates = extract(tokens, lexicon)
    present = {c.slot_type for c in candidates}
    content = {i for i, token in enumerate(tokens) if token not in STOPWORDS}

    interpretations = []
    for template in templates:
        if not template.required_slots <= present:
            continue
        accepted = template.required_slots | template.optional_slots
        used = [c for c in candidates if c.slot_type in accepted]
        bindings: dict[SlotType, str] = {}
        for candidate in used:  # candidates arrive ordered by span start
            bindings.setdefault(candidate.slot_type, candidate.canonical)
        covered = {i for c in used for i in range(c.start, c.end)} & content
        confidence = len(covered) / len(content) if content else 0.0
        interpretations.append(Interpretation(
            template_id=template.id,
            bindings=bindings,
            confidence=confidence,
            consumed_spans=tuple((c.start, c.end) for c in used),
        ))
    priorities = {t.id: t.priority for t in templates}
    interpretations.sort(
        key=lambda i: (-i.confidence, -priorities[i.template_id], i.template_id))
    return interpretations


def instantiate(interp: Interpretation, template: Template, context: UserContext) -> str:
    """Fill the template's placeholders; the result parses as a query.

    A NEAR_ME geo binding requires coordinates in the context, as does any
    ``$lat``/``$lon``/``$k`` runtime parameter in the pattern.
    """
    if interp.bindings.get(SlotType.GEO) == NEAR_ME:
        if context.lat is None:
            raise MissingContext("lat")
        if context.lon is None:
            raise MissingContext("lon")

    def substitute(match: re.Match) -> str:
        name = match.group(1)
        slot = _SLOT_PLACEHOLDERS.get(name)
        if slot is not None:
            value = interp.bindings.get(slot)
            if value is None:
                raise MissingSlot(name)
            return quote_string(value)
        if name == "CITY":
            geo = interp.bindings.get(SlotType.GEO)
            if geo is not None and geo != NEAR_ME:
                return quote_string(geo)
            if context.city is not None:
                return quote_string(context.city)
            raise MissingContext("city")
        if name == "LAT":
            if context.lat is None:
                raise MissingContext("lat")
            return repr(float(context.lat))
        if name == "LON":
            if context.lon is None:
                raise MissingContext("lon")
            return repr(float(context.lon))
        if name == "K":
            return str(int(context.k))
        raise MissingSlot(name)

    text = _PLACEHOLDER_RE.sub(substitute, template.query_pattern)
    for param in _PARAM_RE.findall(text):
        if param in ("lat", "lon", "k") and getattr(context, param) is None:
            raise MissingContext(param)
    return text


def load_templates(path) -> list[Template]:
    """Read ``templates.json`` (array of template objects)."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    templates = []
    for item in raw:
        templates.append(Template(
            id=item["id"],
            required_slots=frozenset(SlotType(s) for s in item["required_slots"]),
            optional_slots=frozenset(SlotType(s) for s in item.get("optional_slots", [])),
            priority=int(item["priority"]),
            query_pattern=item["query_pattern"],
        ))
    ids = [t.id for t in templates]
    if len(ids) != len(set(ids)):
        raise TemplateError("duplicate template ids")
    return templates
