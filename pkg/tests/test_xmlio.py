from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from builders import minimal
from nnn.diagnostics import Severity
from nnn.model import CompositeMode, CompositeTask, FactorType, Goal, ValidationStatus
from nnn.xmlio import ParseMode, parse_document, serialize_document

LENIENT, STRICT = ParseMode.LENIENT, ParseMode.STRICT


def codes(text: str, mode=LENIENT) -> list[str]:
    return [d.code for d in parse_document(text, mode).diagnostics]


class TestCorpus:
    def test_lenient_repairs(self, corpus_text):
        result = parse_document(corpus_text, LENIENT)
        assert result.document is not None
        assert all(d.severity == Severity.WARNING for d in result.diagnostics)
        assert Counter(d.code for d in result.diagnostics) == {
            "W-THEME-MISSING": 1,
            "W-LABEL-ATTR": 1,
            "W-HINT-BODY": 1,
            "W-ID-SYNTH": 3,
        }

    def test_strict_rejects_same_spots(self, corpus_text):
        result = parse_document(corpus_text, STRICT)
        assert Counter(d.code for d in result.diagnostics) == {"E-ATTR-MISSING": 6}
        assert not result.ok

    def test_meta_fields(self, corpus_doc, corpus_text):
        meta = corpus_doc.meta
        assert meta.title == "fatigue"
        assert meta.validation_status == ValidationStatus.IMPLEMENTING
        assert meta.date.isoformat() == "2013-04-01"
        assert meta.definition.theme is None
        assert meta.definition.text.startswith("An overwhelming, sustained sense of exhaustion and decreased capacity")
        assert meta.implementer and f'implementer name="{meta.implementer}"' in corpus_text

    def test_sections(self, corpus_doc):
        body = corpus_doc.body
        assert len(body.factors.items) == 10
        assert [f.text for f in body.factors.items[9].children] == ["medicines", "drug withdrawal", "Chemotherapy"]
        assert all(f.factor_type == FactorType.RELATED for f in body.factors.items)
        assert len(body.symptoms.items) == 17
        assert body.outcomes.labels == ("Endurance", "Concentration", "Energy Conservation", "Nutrition Status: Energy")
        assert [o.id for o in body.outcomes.items] == ["outcome-1", "outcome-2", "outcome-3"]
        assert all(o.goal == Goal.ACHIEVE for o in body.outcomes.items)
        assert body.tasks.labels == ("Energy Management",)
        assert [t.id for t in body.tasks.roots] == ["0", "1", "2", "3"]
        assert body.documentations is None

    def test_custom_preserved_even_if_dangling(self, corpus_doc):
        assert [(r.task_id, r.score) for r in corpus_doc.custom.recommended] == [("21", 7), ("22", 4)]
        assert [m.task_id for m in corpus_doc.custom.mandatory] == ["30", "31", "32"]

    def test_round_trip_strict_clean(self, corpus_doc):
        text = serialize_document(corpus_doc)
        again = parse_document(text, STRICT)
        assert again.diagnostics == ()
        assert again.document == corpus_doc
        assert serialize_document(again.document) == text


def test_full_fixture_round_trip(full_doc):
    text = serialize_document(full_doc)
    again = parse_document(text, STRICT)
    assert again.diagnostics == ()
    assert again.document == full_doc
    assert again.document.body.source == "Nursing care plans, 8th ed."


class TestRepairs:
    def test_singular_composite(self):
        xml = minimal('<tasks><labels/><parallel-task><task id="a" text="x"/></parallel-task></tasks>')
        lenient = parse_document(xml, LENIENT)
        assert [d.code for d in lenient.diagnostics] == ["W-COMPOSITE-NAME"]
        assert lenient.document.body.tasks.roots[0].mode == CompositeMode.PARALLEL
        assert codes(xml, STRICT) == ["E-ELEMENT-NAME"]

    def test_documentations_item_spelling(self):
        xml = minimal('<documentations><documentations id="d" text="x"/></documentations>')
        lenient = parse_document(xml, LENIENT)
        assert [d.code for d in lenient.diagnostics] == ["W-DOC-ELEMENT"]
        assert lenient.document.body.documentations.items[0].id == "d"
        assert codes(xml, STRICT) == ["E-ELEMENT-NAME"]

    def test_synthesized_ids_avoid_existing(self):
        xml = minimal(
            '<outcomes><labels/><outcome goal="achieve" text="a"/>'
            '<outcome id="outcome-1" goal="achieve" text="b"/></outcomes>'
        )
        doc = parse_document(xml).document
        ids = [o.id for o in doc.body.outcomes.items]
        assert ids[1] == "outcome-1" and ids[0] != "outcome-1"

    def test_empty_theme_reads_as_absent(self):
        doc = parse_document(minimal(definition='<definition text="d" theme=""/>'), STRICT).document
        assert doc.meta.definition.theme is None


class TestErrors:
    def test_malformed(self):
        result = parse_document("<nnn><meta>")
        assert result.document is None
        assert [d.code for d in result.diagnostics] == ["E-XML-MALFORMED"]

    def test_non_utf8_declaration(self):
        assert codes('<?xml version="1.0" encoding="ISO-8859-1"?><nnn/>') == ["E-XML-MALFORMED"]

    def test_invalid_utf8_bytes(self):
        assert codes(b"<nnn>\xff</nnn>") == ["E-XML-MALFORMED"]

    def test_dtd_refused(self):
        xml = '<!DOCTYPE nnn [<!ENTITY x "boom">]><nnn>&x;</nnn>'
        assert codes(xml) == ["E-XML-MALFORMED"]

    def test_wrong_root(self):
        assert codes("<guideline/>") == ["E-MISSING-SECTION"]

    def test_missing_guideline(self):
        result = parse_document(minimal().replace("<guideline></guideline>", ""))
        assert result.document is None
        assert [d.code for d in result.diagnostics] == ["E-MISSING-SECTION"]

    def test_duplicate_singleton(self):
        assert codes(minimal(meta_extra='<title text="again"/>')) == ["E-DUP-ELEMENT"]

    def test_unknown_content(self):
        found = codes(minimal('<causes/><factors><factor text="x" colour="red"/></factors>'))
        assert found == ["W-UNKNOWN-ELEMENT", "W-UNKNOWN-ATTR"]

    def test_bad_enum_keeps_raw_value(self):
        result = parse_document(minimal().replace("research", "draft"))
        assert [d.code for d in result.diagnostics] == ["E-ENUM"]
        assert result.document.meta.validation_status == "draft"

    def test_bad_date(self):
        result = parse_document(minimal().replace("2020-01-01", "01.01.2020"))
        assert [d.code for d in result.diagnostics] == ["E-DATE"]
        assert result.document.meta.date == "01.01.2020"


def test_opaque_input_round_trips():
    xml = minimal(
        '<tasks><labels/><task id="a" text="x"><inputs>'
        '<input label="free" xmlns="http://relaxng.org/ns/structure/1.0"><element name="a"><interleave><text/></interleave></element></input>'
        "</inputs></task></tasks>"
    )
    first = parse_document(xml)
    assert [d.code for d in first.diagnostics] == ["W-OPAQUE-INPUT"]
    spec = first.document.body.tasks.roots[0].inputs[0]
    assert spec.pattern is None and "interleave" in spec.raw
    second = parse_document(serialize_document(first.document))
    assert [d.code for d in second.diagnostics] == ["W-OPAQUE-INPUT"]
    assert second.document == first.document


def test_nested_composites_round_trip():
    xml = minimal(
        '<tasks><labels><label text="L"/></labels>'
        '<sequential-tasks name="s"><task id="a" text="x"/>'
        '<parallel-tasks><task id="b" text="y"/><task id="c" text="z"/></parallel-tasks></sequential-tasks>'
        "</tasks>"
    )
    doc = parse_document(xml, STRICT).document
    root = doc.body.tasks.roots[0]
    assert isinstance(root, CompositeTask) and root.name == "s"
    assert parse_document(serialize_document(doc), STRICT).document == doc


_FRAGMENTS = st.sampled_from(
    ["<", ">", "/>", "</", '"', "=", "&", "&amp;", "<task", "<factor", 'text="x"', "<![CDATA[", "]]>",
     "<!--", "-->", "\x00", "é", "<nnn>", "<meta>", "</meta>", "<guideline>", "<labels/>", "id=", " "]
)


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.data())
def test_mutated_corpus_never_crashes(corpus_text, data):
    text = corpus_text
    for _ in range(data.draw(st.integers(min_value=1, max_value=4))):
        pos = data.draw(st.integers(min_value=0, max_value=len(text)))
        cut = data.draw(st.integers(min_value=0, max_value=20))
        text = text[:pos] + data.draw(_FRAGMENTS) + text[pos + cut:]
    result = parse_document(text)
    if result.document is not None and result.ok:
        # whatever survived lenient parsing must serialize to a strict-clean form
        text2 = serialize_document(result.document)
        again = parse_document(text2, STRICT)
        opaque = [d for d in again.diagnostics if d.code != "W-OPAQUE-INPUT"]
        assert opaque == [] and again.document == result.document


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=200))
def test_arbitrary_bytes_never_crash(raw):
    result = parse_document(raw)
    assert result.document is not None or result.diagnostics


@pytest.mark.parametrize("mode", [LENIENT, STRICT])
def test_deep_nesting_reports_instead_of_crashing(mode):
    xml = minimal("<tasks><labels/>" + "<sequential-tasks>" * 400 + "</sequential-tasks>" * 400 + "</tasks>")
    result = parse_document(xml, mode)
    assert result.diagnostics or result.document is not None
