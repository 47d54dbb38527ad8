"""Immutable document model for NNN guideline documents.

Enumerated fields are typed with the StrEnum classes below. A parser that
meets an out-of-range value keeps the raw string instead, so that the
structural validator can still report it; a freshly built model never
needs that escape hatch.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Iterator, Union

from nnn.diagnostics import StrEnum
from nnn.inputschema import Pattern


class ValidationStatus(StrEnum):
    RESEARCH = "research"
    IMPLEMENTING = "implementing"
    TESTING = "testing"
    RUNNING = "running"
    EXPIRED = "expired"


class Goal(StrEnum):
    ACHIEVE = "achieve"
    MAINTAIN = "maintain"
    PREVENT = "prevent"


class FactorType(StrEnum):
    RELATED = "related"
    RISK = "risk"


class CompositeMode(StrEnum):
    SEQUENTIAL = "sequential"
    PARALLEL = "parallel"


# Scores and efforts are ints after a clean parse; a raw string marks an
# unparseable attribute value.
Score = Union[int, str]


@dataclass(frozen=True)
class Hint:
    text: str
    from_: str | None = None
    score: Score | None = None


@dataclass(frozen=True)
class Example:
    text: str
    score: Score | None = None
    children: tuple[Example, ...] = ()


@dataclass(frozen=True)
class InputSpec:
    """A labelled documentation input.

    ``pattern`` is None when the body is outside the supported schema
    subset; ``raw`` then keeps the original body for re-serialization.
    """

    label: str
    pattern: Pattern | None
    raw: str | None = None


@dataclass(frozen=True)
class Definition:
    text: str
    theme: str | None = None
    hints: tuple[Hint, ...] = ()


@dataclass(frozen=True)
class Meta:
    title: str
    definition: Definition
    version_id: str
    validation_status: ValidationStatus | str
    date: dt.date | str | None
    institution: str | None = None
    author: str | None = None
    validator: str | None = None
    implementer: str | None = None


@dataclass(frozen=True)
class Recommendation:
    task_id: str
    score: Score


@dataclass(frozen=True)
class Mandate:
    task_id: str


@dataclass(frozen=True)
class Custom:
    recommended: tuple[Recommendation, ...] = ()
    mandatory: tuple[Mandate, ...] = ()

    def is_empty(self) -> bool:
        return not self.recommended and not self.mandatory


@dataclass(frozen=True)
class Factor:
    text: str
    category: str | None = None
    subcategory: str | None = None
    factor_type: FactorType | str = FactorType.RELATED
    hints: tuple[Hint, ...] = ()
    examples: tuple[Example, ...] = ()
    source: str | None = None
    children: tuple[Factor, ...] = ()


@dataclass(frozen=True)
class Symptom:
    text: str
    category: str | None = None
    subcategory: str | None = None
    hints: tuple[Hint, ...] = ()
    examples: tuple[Example, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class Outcome:
    id: str
    goal: Goal | str
    text: str
    hints: tuple[Hint, ...] = ()
    examples: tuple[Example, ...] = ()
    inputs: tuple[InputSpec, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class AtomicTask:
    id: str
    text: str
    predicted_effort: int | str | None = None
    score: Score | None = None
    hints: tuple[Hint, ...] = ()
    examples: tuple[Example, ...] = ()
    inputs: tuple[InputSpec, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class CompositeTask:
    mode: CompositeMode | str
    children: tuple[TaskNode, ...]
    name: str | None = None
    text: str | None = None
    source: str | None = None


TaskNode = Union[AtomicTask, CompositeTask]


@dataclass(frozen=True)
class Documentation:
    id: str
    text: str
    hints: tuple[Hint, ...] = ()
    examples: tuple[Example, ...] = ()
    inputs: tuple[InputSpec, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class FactorsSection:
    items: tuple[Factor, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class SymptomsSection:
    items: tuple[Symptom, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class OutcomesSection:
    labels: tuple[str, ...] = ()
    items: tuple[Outcome, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class TasksSection:
    labels: tuple[str, ...] = ()
    roots: tuple[TaskNode, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class DocumentationsSection:
    items: tuple[Documentation, ...] = ()
    source: str | None = None


@dataclass(frozen=True)
class GuidelineBody:
    """Guideline sections; None means the section element is absent."""

    factors: FactorsSection | None = None
    symptoms: SymptomsSection | None = None
    outcomes: OutcomesSection | None = None
    tasks: TasksSection | None = None
    documentations: DocumentationsSection | None = None
    source: str | None = None


@dataclass(frozen=True)
class GuidelineDocument:
    meta: Meta
    body: GuidelineBody = field(default_factory=GuidelineBody)
    custom: Custom = field(default_factory=Custom)


# ---------------------------------------------------------------------------
# queries


def iter_atomic(nodes: tuple[TaskNode, ...] | list[TaskNode]) -> Iterator[AtomicTask]:
    for node in nodes:
        if isinstance(node, AtomicTask):
            yield node
        else:
            yield from iter_atomic(node.children)


def all_atomic_tasks(doc: GuidelineDocument) -> list[AtomicTask]:
    """Atomic tasks in document order (depth-first, left to right)."""
    tasks = doc.body.tasks
    return list(iter_atomic(tasks.roots)) if tasks else []


def find_task(doc: GuidelineDocument, task_id: str) -> AtomicTask | None:
    for task in all_atomic_tasks(doc):
        if task.id == task_id:
            return task
    return None


def composite_tag(mode: CompositeMode | str) -> str:
    return f"{mode}-tasks"


# ---------------------------------------------------------------------------
# document paths
#
# Paths name elements of the canonical serialization, e.g.
# /guideline/factors/factor[3]/hints/hint[1]. Elements that may repeat carry
# a 1-based ordinal among same-named siblings; singletons carry none.


@dataclass(frozen=True)
class Located:
    path: str
    node: object
    source: str | None
    parent: str | None


def _ordinals(items, tag_of) -> Iterator[tuple[str, object]]:
    seen: dict[str, int] = {}
    for item in items:
        tag = tag_of(item)
        seen[tag] = seen.get(tag, 0) + 1
        yield f"{tag}[{seen[tag]}]", item


def _walk_hints(base: str, hints: tuple[Hint, ...]) -> Iterator[Located]:
    if not hints:
        return
    yield Located(f"{base}/hints", hints, None, base)
    for seg, hint in _ordinals(hints, lambda _h: "hint"):
        yield Located(f"{base}/hints/{seg}", hint, None, f"{base}/hints")


def _walk_examples(base: str, examples: tuple[Example, ...]) -> Iterator[Located]:
    if not examples:
        return
    yield Located(f"{base}/examples", examples, None, base)
    for seg, ex in _ordinals(examples, lambda _e: "example"):
        path = f"{base}/examples/{seg}"
        yield Located(path, ex, None, f"{base}/examples")
        yield from _walk_examples(path, ex.children)


def _walk_inputs(base: str, inputs: tuple[InputSpec, ...]) -> Iterator[Located]:
    if not inputs:
        return
    yield Located(f"{base}/inputs", inputs, None, base)
    for seg, spec in _ordinals(inputs, lambda _i: "input"):
        yield Located(f"{base}/inputs/{seg}", spec, None, f"{base}/inputs")


def _walk_extras(base: str, node) -> Iterator[Located]:
    yield from _walk_hints(base, getattr(node, "hints", ()))
    yield from _walk_examples(base, getattr(node, "examples", ()))
    yield from _walk_inputs(base, getattr(node, "inputs", ()))


def _walk_factors(base: str, factors: tuple[Factor, ...]) -> Iterator[Located]:
    for seg, factor in _ordinals(factors, lambda _f: "factor"):
        path = f"{base}/{seg}"
        yield Located(path, factor, factor.source, base)
        if factor.children:
            yield Located(f"{path}/factors", factor.children, None, path)
            yield from _walk_factors(f"{path}/factors", factor.children)
        yield from _walk_extras(path, factor)


def _walk_labels(base: str, labels: tuple[str, ...]) -> Iterator[Located]:
    yield Located(f"{base}/labels", labels, None, base)
    for seg, label in _ordinals(labels, lambda _l: "label"):
        yield Located(f"{base}/labels/{seg}", label, None, f"{base}/labels")


def _walk_tasks(base: str, nodes: tuple[TaskNode, ...]) -> Iterator[Located]:
    tag_of = lambda n: "task" if isinstance(n, AtomicTask) else composite_tag(n.mode)  # noqa: E731
    for seg, node in _ordinals(nodes, tag_of):
        path = f"{base}/{seg}"
        yield Located(path, node, node.source, base)
        if isinstance(node, AtomicTask):
            yield from _walk_extras(path, node)
        else:
            yield from _walk_tasks(path, node.children)


def iter_guideline(doc: GuidelineDocument) -> Iterator[Located]:
    """Every addressable element of the guideline section, parents first."""
    body = doc.body
    root = "/guideline"
    yield Located(root, body, body.source, None)
    if body.factors is not None:
        base = f"{root}/factors"
        yield Located(base, body.factors, body.factors.source, root)
        yield from _walk_factors(base, body.factors.items)
    if body.symptoms is not None:
        base = f"{root}/symptoms"
        yield Located(base, body.symptoms, body.symptoms.source, root)
        for seg, sym in _ordinals(body.symptoms.items, lambda _s: "symptom"):
            yield Located(f"{base}/{seg}", sym, sym.source, base)
            yield from _walk_extras(f"{base}/{seg}", sym)
    if body.outcomes is not None:
        base = f"{root}/outcomes"
        yield Located(base, body.outcomes, body.outcomes.source, root)
        yield from _walk_labels(base, body.outcomes.labels)
        for seg, out in _ordinals(body.outcomes.items, lambda _o: "outcome"):
            yield Located(f"{base}/{seg}", out, out.source, base)
            yield from _walk_extras(f"{base}/{seg}", out)
    if body.tasks is not None:
        base = f"{root}/tasks"
        yield Located(base, body.tasks, body.tasks.source, root)
        yield from _walk_labels(base, body.tasks.labels)
        yield from _walk_tasks(base, body.tasks.roots)
    if body.documentations is not None:
        base = f"{root}/documentations"
        yield Located(base, body.documentations, body.documentations.source, root)
        for seg, item in _ordinals(body.documentations.items, lambda _d: "documentation"):
            yield Located(f"{base}/{seg}", item, item.source, base)
            yield from _walk_extras(f"{base}/{seg}", item)


def iter_meta(doc: GuidelineDocument) -> Iterator[Located]:
    meta = doc.meta
    yield Located("/meta", meta, None, None)
    yield Located("/meta/title", meta.title, None, "/meta")
    yield Located("/meta/definition", meta.definition, None, "/meta")
    yield from _walk_hints("/meta/definition", meta.definition.hints)
