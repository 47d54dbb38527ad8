"""Lossy skeleton exporters to Arden Syntax, Asbru and GLIF.

Each exporter records, block by block, what it actually wrote: directly
(``emitted``), through a lossy substitute (``via_workaround``), or not at
all (``dropped``). Clinical logic cannot be derived from an NNN document,
so the outputs carry TODO markers where a target needs it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from nnn._xml import Node, render_document
from nnn.coverage import BuildingBlock as B
from nnn.coverage import Standard, present_blocks
from nnn.diagnostics import Diagnostic, NNNError, diag
from nnn.model import (
    AtomicTask,
    CompositeMode,
    GuidelineDocument,
    Hint,
    TaskNode,
    all_atomic_tasks,
    iter_atomic,
    iter_guideline,
    iter_meta,
)
from nnn.taskgraph import compile_graph, topological_order

_BLOCK_ORDER = list(B)


@dataclass(frozen=True)
class LossLedger:
    standard: Standard
    emitted: frozenset[B]
    via_workaround: frozenset[B]
    dropped: frozenset[B]

    def to_dict(self) -> dict:
        names = lambda blocks: sorted((str(b) for b in blocks), key=lambda s: int(s[1:]))  # noqa: E731
        return {
            "standard": str(self.standard),
            "emitted": names(self.emitted),
            "via_workaround": names(self.via_workaround),
            "dropped": names(self.dropped),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class Artifact:
    filename: str
    content: str


@dataclass(frozen=True)
class ExportBundle:
    artifacts: tuple[Artifact, ...]
    ledger: LossLedger
    diagnostics: tuple[Diagnostic, ...] = ()


@dataclass
class _Recorder:
    standard: Standard
    detected: set[B]
    emitted: set[B] = field(default_factory=set)
    workaround: set[B] = field(default_factory=set)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def emit(self, block: B) -> None:
        if block in self.detected:
            self.emitted.add(block)

    def substitute(self, block: B, where: str) -> None:
        if block in self.detected and block not in self.workaround:
            self.workaround.add(block)
            self.diagnostics.append(
                diag("W-FIDELITY", "/", f"{block} ({block.display_name}) written to {where} as a workaround")
            )

    def ledger(self) -> LossLedger:
        via = frozenset(self.workaround)
        emitted = frozenset(self.emitted - via)
        return LossLedger(self.standard, emitted, via, frozenset(self.detected - emitted - via))


def _require_tasks(doc: GuidelineDocument, standard: Standard) -> list[AtomicTask]:
    tasks = all_atomic_tasks(doc)
    if not tasks:
        raise NNNError(diag("E-EXPORT-EMPTY", "/guideline/tasks", f"nothing to export to {standard}: no tasks"))
    return tasks


def _slug(text: str, fallback: str = "guideline") -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_").lower()
    return slug or fallback


def _sources(doc: GuidelineDocument) -> list[str]:
    seen: list[str] = []
    for loc in list(iter_meta(doc)) + list(iter_guideline(doc)):
        for value in (loc.source, loc.node.from_ if isinstance(loc.node, Hint) else None):
            if value is not None and value not in seen:
                seen.append(value)
    return seen


def _symptoms(doc: GuidelineDocument) -> list[str]:
    return [s.text for s in doc.body.symptoms.items] if doc.body.symptoms else []


def _outcomes(doc: GuidelineDocument):
    return list(doc.body.outcomes.items) if doc.body.outcomes else []


def _documentations(doc: GuidelineDocument):
    return list(doc.body.documentations.items) if doc.body.documentations else []


def _labels(doc: GuidelineDocument) -> tuple[list[str], list[str]]:
    nic = list(doc.body.tasks.labels) if doc.body.tasks else []
    noc = list(doc.body.outcomes.labels) if doc.body.outcomes else []
    return nic, noc


# ---------------------------------------------------------------------------
# Arden Syntax

_ARDEN_VALIDATION = {
    "research": "research",
    "implementing": "testing",
    "testing": "testing",
    "running": "production",
    "expired": "expired",
}


def _slot(value: str) -> str:
    return " ".join(value.split()).replace(";;", "; ;")


def _arden_string(text: str) -> str:
    return '"' + _slot(text).replace('"', '""') + '"'


def export_arden(doc: GuidelineDocument) -> ExportBundle:
    """One MLM per top-level task node; composite subtrees share one MLM."""
    _require_tasks(doc, Standard.ARDEN)
    rec = _Recorder(Standard.ARDEN, present_blocks(doc))
    meta = doc.meta
    order = topological_order(compile_graph(doc))
    rank = {task_id: i for i, task_id in enumerate(order)}
    symptoms, outcomes, sources = _symptoms(doc), _outcomes(doc), _sources(doc)
    doc_lines = [f"write {_arden_string('Document: ' + d.text)}" for d in _documentations(doc)]
    base = _slug(meta.title)
    artifacts = []
    for index, root in enumerate(doc.body.tasks.roots, start=1):
        tasks = sorted(iter_atomic([root]), key=lambda t: rank[t.id])
        if not tasks:
            continue
        actions: list[str] = []
        for task in tasks:
            actions.append(f"write {_arden_string(task.text)}")
            actions += [f"write {_arden_string('Document: ' + spec.label)}" for spec in task.inputs]
        actions += doc_lines
        rec.emit(B.B7)
        if any(t.inputs for t in tasks) or doc_lines:
            rec.emit(B.B9)

        lines = ["maintenance:"]
        lines.append(f"  title: {_slot(meta.title)};;")
        rec.emit(B.B1)
        lines.append(f"  mlmname: {base}_{index:02d};;")
        lines.append("  arden: Version 2.5;;")
        lines.append(f"  version: {_slot(meta.version_id)};;")
        lines.append(f"  institution: {_slot(meta.institution or '')};;")
        lines.append(f"  author: {_slot(meta.author or '')};;")
        lines.append(f"  specialist: {_slot(meta.implementer or '')};;")
        lines.append(f"  date: {_slot(str(meta.date or ''))};;")
        lines.append(f"  validation: {_ARDEN_VALIDATION.get(str(meta.validation_status), 'research')};;")
        lines.append("library:")
        if outcomes:
            lines.append(f"  purpose: {_slot(' '.join(o.text for o in outcomes))};;")
            rec.substitute(B.B8, "the library purpose slot")
        else:
            lines.append("  purpose: ;;")
        lines.append(f"  explanation: {_slot(meta.definition.text)};;")
        rec.emit(B.B2)
        lines.append(f"  keywords: {_slot('; '.join(symptoms))};;")
        if symptoms:
            rec.emit(B.B3)
        if sources:
            lines.append(f"  citations: {_slot(' '.join(f'{i}. {s}' for i, s in enumerate(sources, start=1)))};;")
            rec.emit(B.B6)
        lines.append("knowledge:")
        lines.append("  type: data_driven;;")
        lines.append("  data: /* TODO: read the patient data this intervention depends on */;;")
        lines.append("  priority: 50;;")
        lines.append("  evoke: /* TODO: evoking event */;;")
        lines.append("  logic: /* TODO: eligibility condition */ conclude true;;")
        lines.append("  action: " + ";\n          ".join(actions) + ";;")
        lines.append("  urgency: 50;;")
        lines.append("end:")
        artifacts.append(Artifact(f"{base}_{index:02d}.mlm", "\n".join(lines) + "\n"))
    return ExportBundle(tuple(artifacts), rec.ledger(), tuple(rec.diagnostics))


# ---------------------------------------------------------------------------
# Asbru


def _asbru_plan(node: TaskNode, rec: _Recorder) -> Node:
    if isinstance(node, AtomicTask):
        rec.emit(B.B7)
        body = [Node("plan-body", {}, [Node("user-performed")])]
        if node.inputs:
            rec.emit(B.B9)
            body.append(Node("documentation", {}, [Node("item", {"label": s.label}) for s in node.inputs]))
        return Node("plan", {"name": f"task-{node.id}", "title": node.text}, body)
    kind = "sequentially" if node.mode == CompositeMode.SEQUENTIAL else "parallel"
    attrs = {"type": kind, "wait-for": "all"}
    if node.name:
        attrs["name"] = node.name
    return Node("subplans", attrs, [_asbru_plan(c, rec) for c in node.children])


def export_asbru(doc: GuidelineDocument) -> ExportBundle:
    """A single plan; the task composition becomes nested subplans."""
    _require_tasks(doc, Standard.ASBRU)
    rec = _Recorder(Standard.ASBRU, present_blocks(doc))
    meta = doc.meta
    base = _slug(meta.title)
    plan = Node("plan", {"name": base, "title": meta.title})
    rec.emit(B.B1)

    for source in _sources(doc):
        plan.children.append(Node("comment", {"text": f"source: {source}"}))
        rec.emit(B.B6)

    symptoms = _symptoms(doc)
    if symptoms:
        checks = [Node("comment", {"text": f"symptom: {s}"}) for s in symptoms]
        checks.append(Node("comment", {"text": "TODO: express symptoms as parameter propositions"}))
        plan.children.append(Node("preconditions", {}, [Node("filter-precondition", {}, checks)]))
        rec.substitute(B.B3, "filter preconditions")

    _, noc = _labels(doc)
    outcomes = _outcomes(doc)
    if outcomes or noc:
        intentions = Node("intentions")
        for label in noc:
            intentions.children.append(Node("label", {"text": label}))
            rec.emit(B.B11)
        for o in outcomes:
            intentions.children.append(
                Node(
                    "intention",
                    {"label": o.id, "type": "overall-state", "verb": str(o.goal)},
                    [
                        Node("comment", {"text": o.text}),
                        Node("temporal-pattern", {}, [Node("comment", {"text": "TODO: target state and time annotation"})]),
                    ],
                )
            )
            rec.emit(B.B8)
        plan.children.append(intentions)

    roots = list(doc.body.tasks.roots)
    mirrored = [_asbru_plan(r, rec) for r in roots]
    if len(mirrored) == 1 and mirrored[0].tag == "subplans":
        top = mirrored[0]
    else:
        top = Node("subplans", {"type": "parallel", "wait-for": "all"}, mirrored)
    body = [top]
    docs = _documentations(doc)
    if docs:
        body.append(
            Node(
                "subplans",
                {"name": "documentation", "type": "any-order", "wait-for": "all"},
                [Node("plan", {"name": f"doc-{d.id}", "title": d.text}, [Node("plan-body", {}, [Node("user-performed")])]) for d in docs],
            )
        )
        rec.emit(B.B9)
    plan.children.append(Node("plan-body", {}, body))

    root = Node("plan-library", {}, [Node("plans", {}, [plan])])
    return ExportBundle((Artifact(f"{base}.asbru.xml", render_document(root)),), rec.ledger(), tuple(rec.diagnostics))


# ---------------------------------------------------------------------------
# GLIF


def _glif_value(value: str) -> str:
    return " ".join(value.split())


def _glif_block(header: str, props: list[tuple[str, str]]) -> str:
    return "\n".join([header] + [f"  {k}: {_glif_value(v)}" for k, v in props])


def export_glif(doc: GuidelineDocument) -> ExportBundle:
    """Guideline, Action Step and Action Specification instance listings."""
    tasks = _require_tasks(doc, Standard.GLIF)
    rec = _Recorder(Standard.GLIF, present_blocks(doc))
    meta = doc.meta
    graph = compile_graph(doc)
    order = topological_order(graph)
    diagnostics: list[Diagnostic] = []
    if any((a, b) not in graph.edges for a, b in zip(order, order[1:])):
        diagnostics.append(
            diag("I-LINEARIZED", "/guideline/tasks", "unordered tasks chained in a fixed order: " + ", ".join(order))
        )

    names: dict[str, str] = {}
    for task_id in order:
        name = f"step_{_slug(task_id, 'task')}"
        while name in names.values():
            name += "_"
        names[task_id] = name
    by_id = {t.id: t for t in tasks}
    docs = _documentations(doc)
    doc_steps = [(d, f"step_doc_{_slug(d.id, 'item')}") for d in docs]

    symptoms, outcomes = _symptoms(doc), _outcomes(doc)
    guideline = [("name", meta.title)]
    rec.emit(B.B1)
    if meta.author:
        guideline.append(("author", meta.author))
    if outcomes:
        guideline.append(("intention", "; ".join(o.text for o in outcomes)))
        rec.emit(B.B8)
    if symptoms:
        guideline.append(("eligibility_criteria", ", ".join(symptoms)))
        rec.emit(B.B3)
    guideline.append(("didactics", meta.definition.text))
    rec.emit(B.B2)
    guideline.append(("step", ", ".join([names[i] for i in order] + [s for _, s in doc_steps])))
    guideline.append(("first_step", names[order[0]]))
    blocks = [_glif_block("Guideline", guideline)]

    nic, noc = _labels(doc)
    label_didactics = "; ".join(part for part in (
        "NIC: " + ", ".join(nic) if nic else "",
        "NOC: " + ", ".join(noc) if noc else "",
    ) if part)
    if nic:
        rec.substitute(B.B10, "action specification didactics")
    if noc:
        rec.substitute(B.B11, "action specification didactics")

    for pos, task_id in enumerate(order):
        nxt = names[order[pos + 1]] if pos + 1 < len(order) else "null"
        blocks.append(_glif_block("Action Step", [
            ("name", names[task_id]), ("action", f"AS_{names[task_id][5:]}"), ("subguideline", "null"), ("next_step", nxt),
        ]))
        rec.emit(B.B7)
    for d, step in doc_steps:
        blocks.append(_glif_block("Action Step", [
            ("name", step), ("action", f"AS_{step[5:]}"), ("subguideline", "null"), ("next_step", "null"),
        ]))
        rec.emit(B.B9)

    for task_id in order:
        task = by_id[task_id]
        props = [("name", f"AS_{names[task_id][5:]}"), ("description", task.text)]
        if task.inputs:
            props.append(("patient_data", ", ".join(s.label for s in task.inputs)))
            rec.emit(B.B9)
        props.append(("didactics", label_didactics or "[none]"))
        blocks.append(_glif_block("Action Specification", props))
    for d, step in doc_steps:
        props = [("name", f"AS_{step[5:]}"), ("description", d.text)]
        if d.inputs:
            props.append(("patient_data", ", ".join(s.label for s in d.inputs)))
        blocks.append(_glif_block("Action Specification", props))

    sources = _sources(doc)
    if sources:
        blocks.append(_glif_block("Supplemental Material", [("name", "sources"), ("content", "; ".join(sources))]))
        rec.emit(B.B6)

    content = "\n\n".join(blocks) + "\n"
    diagnostics += rec.diagnostics
    return ExportBundle((Artifact(f"{_slug(meta.title)}.glif.txt", content),), rec.ledger(), tuple(diagnostics))


EXPORTERS = {
    Standard.ARDEN: export_arden,
    Standard.ASBRU: export_asbru,
    Standard.GLIF: export_glif,
}


def export(doc: GuidelineDocument, standard: Standard | str) -> ExportBundle:
    return EXPORTERS[Standard(standard)](doc)
