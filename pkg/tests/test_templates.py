import itertools

import pytest

from fdl.gql import parse
from fdl.lexicon import SlotType, load_lexicon
from fdl.templates import (
    MissingContext,
    MissingSlot,
    Template,
    TemplateError,
    UserContext,
    interpret,
    instantiate,
    load_templates,
)

FLAGSHIP = "What pediatricians are open on the weekend near me?"

CANONICAL_SHOWCASE = (
    'MATCH (p:Provider)-[:HAS_SPECIALTY]->(s:Specialty), (p)-[:WORKS_AT]->(l:Location) '
    'WHERE s.name = "Pediatrics" AND opens_during(l.hours, "WEEKEND") '
    'RETURN p, l ORDER BY distance(l.geo, point($lat, $lon)) ASC'
)


@pytest.fixture(scope="module")
def nl(data_dir, specialty_records):
    lexicon = load_lexicon(data_dir / "lexicon.json", specialty_records)
    templates = load_templates(data_dir / "templates.json")
    vocabulary = frozenset(lexicon.words())
    return lexicon, templates, vocabulary


def test_flagship_interpretation(nl):
    lexicon, templates, vocabulary = nl
    ranked = interpret(FLAGSHIP, templates, lexicon, vocabulary)
    assert ranked
    top = ranked[0]
    assert top.template_id == "find_providers_by_specialty"
    assert top.bindings == {
        SlotType.SPECIALTY: "Pediatrics",
        SlotType.TEMPORAL: "WEEKEND",
        SlotType.GEO: "NEAR_ME",
    }
    # content tokens: pediatricians/open/weekend/near; covered: all but "open"
    assert top.confidence == pytest.approx(0.75)


def test_flagship_instantiates_to_canonical_query(nl):
    lexicon, templates, vocabulary = nl
    top = interpret(FLAGSHIP, templates, lexicon, vocabulary)[0]
    template = next(t for t in templates if t.id == top.template_id)
    text = instantiate(top, template, UserContext(lat=34.05, lon=-118.24))
    assert text == CANONICAL_SHOWCASE
    parse(text)


def test_aggregate_question_selects_count_template(nl):
    lexicon, templates, vocabulary = nl
    ranked = interpret("how many pediatricians per city", templates, lexicon, vocabulary)
    assert ranked[0].template_id == "count_providers_group_by"
    assert ranked[0].bindings[SlotType.SPECIALTY] == "Pediatrics"
    assert ranked[0].confidence == 1.0


def test_no_slots_no_interpretations(nl):
    lexicon, templates, vocabulary = nl
    assert interpret("hello world", templates, lexicon, vocabulary) == []


def test_near_me_without_coordinates(nl):
    lexicon, templates, vocabulary = nl
    top = interpret(FLAGSHIP, templates, lexicon, vocabulary)[0]
    template = next(t for t in templates if t.id == top.template_id)
    with pytest.raises(MissingContext) as err:
        instantiate(top, template, UserContext())
    assert err.value.field == "lat"


def test_template_without_placeholders_is_verbatim():
    template = Template(
        id="all_locations",
        required_slots=frozenset(),
        optional_slots=frozenset(),
        priority=1,
        query_pattern="MATCH (l:Location) RETURN l",
    )
    from fdl.templates import Interpretation
    interp = Interpretation("all_locations", {}, 1.0, ())
    assert instantiate(interp, template, UserContext()) == "MATCH (l:Location) RETURN l"


def test_placeholder_must_be_known():
    with pytest.raises(TemplateError):
        Template(
            id="bad",
            required_slots=frozenset(),
            optional_slots=frozenset(),
            priority=1,
            query_pattern="MATCH (l:Location) WHERE l.city = {PLANET} RETURN l",
        )


def test_slot_placeholder_requires_slot_declared():
    with pytest.raises(TemplateError):
        Template(
            id="bad",
            required_slots=frozenset(),
            optional_slots=frozenset(),
            priority=1,
            query_pattern='MATCH (s:Specialty) WHERE s.name = {SPECIALTY} RETURN s',
        )


def test_missing_slot_at_instantiation(nl):
    lexicon, templates, vocabulary = nl
    template = next(t for t in templates if t.id == "find_providers_by_specialty_gender")
    from fdl.templates import Interpretation
    interp = Interpretation(template.id, {SlotType.SPECIALTY: "Pediatrics"}, 1.0, ())
    with pytest.raises(MissingSlot):
        instantiate(interp, template, UserContext())


def test_confidence_bounds_and_monotonicity(nl):
    lexicon, templates, vocabulary = nl
    weaker = interpret("pediatrician please", templates, lexicon, vocabulary)
    stronger = interpret("pediatrician open on the weekend", templates, lexicon, vocabulary)
    assert all(0.0 <= i.confidence <= 1.0 for i in weaker + stronger)
    weak_best = max(i.confidence for i in weaker)
    strong_best = max(i.confidence for i in stronger)
    assert strong_best >= weak_best


def test_ranking_is_confidence_then_priority_then_id(nl):
    lexicon, templates, vocabulary = nl
    ranked = interpret(FLAGSHIP, templates, lexicon, vocabulary)
    priorities = {t.id: t.priority for t in templates}
    keys = [(-i.confidence, -priorities[i.template_id], i.template_id) for i in ranked]
    assert keys == sorted(keys)


def test_every_template_instantiates_and_parses(nl):
    """Cross product of the bundled library and bundled lexicon values."""
    lexicon, templates, vocabulary = nl
    from fdl.templates import Interpretation
    values_by_type: dict[SlotType, set[str]] = {}
    for entry in lexicon.entries():
        values_by_type.setdefault(entry.slot_type, set()).add(entry.canonical)
    context = UserContext(lat=34.05, lon=-118.24, city="Crestline", k=10)
    checked = 0
    for template in templates:
        slot_types = sorted(template.required_slots | template.optional_slots,
                            key=lambda s: s.value)
        pools = [sorted(values_by_type.get(s, {"_"})) for s in slot_types]
        for combo in itertools.product(*pools):
            bindings = dict(zip(slot_types, combo))
            interp = Interpretation(template.id, bindings, 1.0, ())
            text = instantiate(interp, template, context)
            parse(text)
            checked += 1
    assert checked > 100
