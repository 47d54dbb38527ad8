"""Decision-support listing order for treatments."""

from __future__ import annotations

from dataclasses import dataclass

from nnn.model import GuidelineDocument, all_atomic_tasks
from nnn.taskgraph import natural_key


@dataclass(frozen=True)
class AdviceEntry:
    task_id: str
    mandatory: bool
    effective_score: int | None
    rank: int
    text: str = ""

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "id": self.task_id,
            "mandatory": self.mandatory,
            "score": self.effective_score,
            "text": self.text,
        }


def _valid_score(value) -> int | None:
    if isinstance(value, int) and not isinstance(value, bool) and 1 <= value <= 10:
        return value
    return None


def advise_order(doc: GuidelineDocument) -> list[AdviceEntry]:
    """Rank every atomic task: mandatory first, then by score, then by id.

    The custom recommended score overrides a task's own score; tasks with no
    score sort below score 1. Custom entries naming unknown tasks, and
    repeated custom entries, are ignored.
    """
    tasks = all_atomic_tasks(doc)
    known = {t.id for t in tasks}
    recommended: dict[str, int | None] = {}
    for rec in doc.custom.recommended:
        if rec.task_id in known and rec.task_id not in recommended:
            recommended[rec.task_id] = _valid_score(rec.score)
    mandatory = {m.task_id for m in doc.custom.mandatory if m.task_id in known}

    first: dict[str, object] = {}
    for t in tasks:
        first.setdefault(t.id, t)
    key = natural_key(first)

    def score_of(task_id: str) -> int | None:
        if recommended.get(task_id) is not None:
            return recommended[task_id]
        return _valid_score(first[task_id].score)

    ordered = sorted(first, key=lambda i: (i not in mandatory, -(score_of(i) or 0), key(i)))
    return [
        AdviceEntry(task_id, task_id in mandatory, score_of(task_id), rank, first[task_id].text)
        for rank, task_id in enumerate(ordered, start=1)
    ]
