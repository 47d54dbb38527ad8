from __future__ import annotations

import dataclasses

from hypothesis import given, settings

from nnn.advise import advise_order
from nnn.model import AtomicTask
from strategies import make_document, ranking_documents


def ids(doc) -> list[str]:
    return [e.task_id for e in advise_order(doc)]


def test_corpus_falls_back_to_id_order(corpus_doc):
    # every custom entry in the corpus dangles, and no task carries a score
    entries = advise_order(corpus_doc)
    assert [e.task_id for e in entries] == ["0", "1", "2", "3"]
    assert [e.rank for e in entries] == [1, 2, 3, 4]
    assert not any(e.mandatory for e in entries)


def test_full_fixture(full_doc):
    entries = advise_order(full_doc)
    assert [(e.task_id, e.mandatory, e.effective_score) for e in entries] == [
        ("m1", True, 8),
        ("m2", False, 9),
        ("e1", False, 4),
        ("m3", False, None),
        ("m4", False, None),
    ]
    assert entries[0].to_dict() == {
        "rank": 1, "id": "m1", "mandatory": True, "score": 8, "text": "Assess pain before mobilization",
    }


def test_recommended_score_overrides_task_score():
    doc = make_document([AtomicTask("a", "x", score=9), AtomicTask("b", "y", score=5)], recommended=[("a", 2)])
    assert ids(doc) == ["b", "a"]


def test_unscored_sorts_below_score_one():
    doc = make_document([AtomicTask("a", "x"), AtomicTask("b", "y", score=1)])
    assert ids(doc) == ["b", "a"]


def test_first_duplicate_recommendation_wins():
    doc = make_document([AtomicTask("a", "x"), AtomicTask("b", "y", score=5)], recommended=[("a", 9), ("a", 1)])
    assert ids(doc) == ["a", "b"]


def test_mandatory_beats_any_score():
    doc = make_document([AtomicTask("a", "x", score=10), AtomicTask("b", "y")], mandatory=["b", "ghost"])
    assert ids(doc) == ["b", "a"]


def test_numeric_ids_tie_break_numerically():
    doc = make_document([AtomicTask(i, "x") for i in ("10", "9", "2")])
    assert ids(doc) == ["2", "9", "10"]


@settings(max_examples=200, deadline=None)
@given(ranking_documents())
def test_mandatory_prefix_and_permutation(doc):
    entries = advise_order(doc)
    task_ids = [t.id for t in doc.body.tasks.roots]
    assert sorted(e.task_id for e in entries) == sorted(task_ids)
    flags = [e.mandatory for e in entries]
    assert flags == sorted(flags, reverse=True)
    assert entries == advise_order(doc)


@settings(max_examples=200, deadline=None)
@given(ranking_documents())
def test_raising_a_recommendation_never_hurts(doc):
    before = {e.task_id: e for e in advise_order(doc)}
    for task in doc.body.tasks.roots:
        current = before[task.id].effective_score or 0
        if current >= 10:
            continue
        raised = [(r.task_id, r.score) for r in doc.custom.recommended]
        if any(i == task.id for i, _ in raised):
            first = next(k for k, (i, _) in enumerate(raised) if i == task.id)
            raised[first] = (task.id, 10)
        else:
            raised.insert(0, (task.id, 10))
        mandatory = [m.task_id for m in doc.custom.mandatory]
        bumped = make_document(list(doc.body.tasks.roots), raised, mandatory)
        after = {e.task_id: e for e in advise_order(bumped)}
        assert after[task.id].rank <= before[task.id].rank


def test_ignores_ghost_references():
    doc = make_document([AtomicTask("a", "x")], recommended=[("ghost", 10)], mandatory=["ghost"])
    (entry,) = advise_order(doc)
    assert entry.task_id == "a" and not entry.mandatory


def test_text_is_carried(full_doc):
    doc = dataclasses.replace(full_doc)
    assert all(e.text for e in advise_order(doc))
