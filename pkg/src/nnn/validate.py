"""Structural and semantic checks over a parsed document.

Neither check mutates the document; repairs belong to lenient parsing.
"""

from __future__ import annotations

import datetime as dt
from collections import Counter

from nnn.diagnostics import Diagnostic, NNNError, Severity, ValidationReport, diag
from nnn.model import (
    AtomicTask,
    CompositeMode,
    CompositeTask,
    Documentation,
    Example,
    Factor,
    FactorType,
    Goal,
    GuidelineDocument,
    Hint,
    InputSpec,
    Outcome,
    Symptom,
    ValidationStatus,
    iter_guideline,
    iter_meta,
)


def _check_score(score, path: str, what: str, out: list[Diagnostic]) -> None:
    if score is None:
        return
    if isinstance(score, bool) or not isinstance(score, int):
        out.append(diag("E-INTEGER", path, f"{what} {score!r} is not an integer"))
    elif not 1 <= score <= 10:
        out.append(diag("E-SCORE-RANGE", path, f"{what} {score} outside 1..10"))


def _check_enum(value, enum_cls, path: str, what: str, out: list[Diagnostic]) -> None:
    if value not in {m.value for m in enum_cls}:
        allowed = ", ".join(m.value for m in enum_cls)
        out.append(diag("E-ENUM", path, f"{what} {str(value)!r} not one of: {allowed}"))


def validate_structure(doc: GuidelineDocument) -> ValidationReport:
    """Grammar-level checks: ranges, enums, nesting depth, required pairings."""
    out: list[Diagnostic] = []
    meta = doc.meta
    _check_enum(meta.validation_status, ValidationStatus, "/meta/validation", "validation status", out)
    if not isinstance(meta.date, dt.date):
        out.append(diag("E-DATE", "/meta/date", f"{meta.date!r} is not an ISO 8601 calendar date"))
    for seg, rec in _numbered(doc.custom.recommended, "recommended"):
        _check_score(rec.score, f"/custom/{seg}", "recommended score", out)

    located = list(iter_meta(doc)) + list(iter_guideline(doc))
    for loc in located:
        node, path = loc.node, loc.path
        if isinstance(node, Hint):
            _check_score(node.score, path, "hint score", out)
            if not node.text:
                out.append(diag("E-EMPTY-TEXT", path, "hint text is empty"))
        elif isinstance(node, Example):
            _check_score(node.score, path, "example score", out)
            if _depth(path, "/examples/example[") > 2:
                out.append(diag("E-EXAMPLE-DEPTH", path, "examples may nest only one level"))
        elif isinstance(node, InputSpec):
            if not node.label:
                out.append(diag("E-EMPTY-TEXT", path, "input label is empty"))
        elif isinstance(node, Factor):
            _check_enum(node.factor_type, FactorType, path, "factor type", out)
            if node.subcategory is not None and node.category is None:
                out.append(diag("E-SUBCAT", path, "subcategory given without category"))
            if _depth(path, "/factor[") > 2:
                out.append(diag("E-FACTOR-DEPTH", path, "factors may nest only one level"))
        elif isinstance(node, Outcome):
            _check_enum(node.goal, Goal, path, "outcome goal", out)
        elif isinstance(node, AtomicTask):
            _check_score(node.score, path, "task score", out)
            effort = node.predicted_effort
            if effort is not None and (isinstance(effort, bool) or not isinstance(effort, int) or effort < 0):
                out.append(diag("E-EFFORT", path, f"predictedeffort {effort!r} is not a non-negative integer"))
        elif isinstance(node, CompositeTask):
            _check_enum(node.mode, CompositeMode, path, "composite mode", out)
            if not node.children:
                out.append(diag("E-EMPTY-COMPOSITE", path, "composite has no child tasks"))
        elif isinstance(node, Symptom):
            if node.subcategory is not None and node.category is None:
                out.append(diag("E-SUBCAT", path, "subcategory given without category"))
    return ValidationReport.of(out)


def _depth(path: str, marker: str) -> int:
    return path.count(marker)


def _numbered(items, tag: str):
    for index, item in enumerate(items, start=1):
        yield f"{tag}[{index}]", item


def validate_semantics(doc: GuidelineDocument, refs_warn: bool = False) -> ValidationReport:
    """Cross-reference checks: id uniqueness, custom references, empty sections.

    With ``refs_warn`` dangling custom references are reported as warnings
    (same code) instead of errors.
    """
    out: list[Diagnostic] = []
    scopes: dict[str, dict[str, str]] = {"task": {}, "outcome": {}, "documentation": {}}
    for loc in iter_guideline(doc):
        node = loc.node
        scope = (
            "task" if isinstance(node, AtomicTask)
            else "outcome" if isinstance(node, Outcome)
            else "documentation" if isinstance(node, Documentation)
            else None
        )
        if scope is None or not node.id:  # a missing id is a parse error already
            continue
        seen = scopes[scope]
        if node.id in seen:
            out.append(diag("E-DUP-ID", loc.path, f"{scope} id {node.id!r} already used at {seen[node.id]}"))
        else:
            seen[node.id] = loc.path

    names = list(scopes)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for shared in sorted(set(scopes[a]) & set(scopes[b])):
                out.append(
                    diag("W-ID-COLLISION", scopes[b][shared], f"id {shared!r} used by a {a} and a {b}")
                )

    task_ids = scopes["task"]
    severity = Severity.WARNING if refs_warn else None
    custom = doc.custom
    for kind, entries in (("recommended", custom.recommended), ("mandatory", custom.mandatory)):
        counts: Counter[str] = Counter()
        for seg, entry in _numbered(entries, kind):
            path = f"/custom/{seg}"
            counts[entry.task_id] += 1
            if counts[entry.task_id] > 1:
                out.append(diag("W-DUP-CUSTOM", path, f"repeated {kind} entry for task {entry.task_id!r}; ignored"))
            if entry.task_id not in task_ids:
                out.append(diag("E-DANGLING-REF", path, f"{kind} task id {entry.task_id!r} is not defined", severity))
    mandatory = {m.task_id for m in custom.mandatory}
    reported: set[str] = set()
    for seg, rec in _numbered(custom.recommended, "recommended"):
        if rec.task_id in mandatory and rec.task_id not in reported:
            reported.add(rec.task_id)
            out.append(diag("W-MAND-AND-REC", f"/custom/{seg}", f"task {rec.task_id!r} is both mandatory and recommended"))

    body = doc.body
    sections = {
        "factors": body.factors and body.factors.items,
        "symptoms": body.symptoms and body.symptoms.items,
        "outcomes": body.outcomes and body.outcomes.items,
        "tasks": body.tasks and body.tasks.roots,
        "documentations": body.documentations and body.documentations.items,
    }
    for name, content in sections.items():
        if getattr(body, name) is not None and not content:
            out.append(diag("W-EMPTY-SECTION", f"/guideline/{name}", f"<{name}> has no entries"))
    return ValidationReport.of(out)


def effective_source(doc: GuidelineDocument, path: str) -> str | None:
    """The element's own ``source`` or the nearest ancestor's.

    Raises NNNError(E-BAD-PATH) when the path names no guideline element.
    """
    index = {loc.path: loc for loc in iter_guideline(doc)}
    key = path.rstrip("/") if path != "/" else path
    loc = index.get(key)
    if loc is None:
        raise NNNError(diag("E-BAD-PATH", path, "path does not address an element of the guideline section"))
    while loc is not None:
        if loc.source is not None:
            return loc.source
        loc = index.get(loc.parent) if loc.parent else None
    return None


def validate_document(doc: GuidelineDocument, refs_warn: bool = False) -> ValidationReport:
    """Structure, then semantics when the structure is error-free."""
    structure = validate_structure(doc)
    if structure.error_count:
        return structure
    return ValidationReport.of(structure.diagnostics + validate_semantics(doc, refs_warn).diagnostics)
