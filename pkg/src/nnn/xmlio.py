"""Reading and writing NNN documents as XML.

A document is one ``<nnn>`` root holding ``<meta>``, an optional
``<custom>`` and ``<guideline>``. Lenient mode repairs the known mismatches
between the published grammar fragments and the published FATIGUE example
(each repair leaves a W- diagnostic); strict mode reports them as errors.
"""

from __future__ import annotations

import datetime as dt
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Callable

from nnn._xml import Node, local_name, namespace_of, parse_xml, render_document
from nnn.diagnostics import Diagnostic, NNNError, Severity, StrEnum, diag, sort_diagnostics
from nnn.inputschema import RNG_NS, compile_pattern, pattern_nodes
from nnn.model import (
    AtomicTask,
    CompositeMode,
    CompositeTask,
    Custom,
    Definition,
    Documentation,
    DocumentationsSection,
    Example,
    Factor,
    FactorsSection,
    FactorType,
    Goal,
    GuidelineBody,
    GuidelineDocument,
    Hint,
    InputSpec,
    Mandate,
    Meta,
    Outcome,
    OutcomesSection,
    Recommendation,
    Symptom,
    SymptomsSection,
    TaskNode,
    TasksSection,
    ValidationStatus,
    composite_tag,
)


class ParseMode(StrEnum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class ParseResult:
    document: GuidelineDocument | None
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return self.document is not None and not any(d.severity == Severity.ERROR for d in self.diagnostics)


def normalize(text: str | None) -> str:
    return " ".join((text or "").split())


def _opt(text: str | None) -> str | None:
    return None if text is None else normalize(text)


_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")

_REPEATABLE = frozenset(
    {
        "factor", "symptom", "outcome", "task", "documentation", "hint", "example", "input", "label",
        "recommended", "mandatory", "sequential-tasks", "parallel-tasks", "sequential-task", "parallel-task",
    }
)


def _parse_score(raw: str | None) -> int | str | None:
    if raw is None:
        return None
    try:
        return int(raw.strip())
    except ValueError:
        return raw


class _Parser:
    def __init__(self, mode: ParseMode):
        self.lenient = mode == ParseMode.LENIENT
        self.diags: list[Diagnostic] = []

    def report(self, code: str, path: str, message: str) -> None:
        self.diags.append(diag(code, path, message))

    def repair(self, warning: str, strict_code: str, path: str, message: str) -> None:
        if self.lenient:
            self.report(warning, path, message)
        else:
            self.report(strict_code, path, message)

    # -- generic helpers ---------------------------------------------------

    def attrs(self, el: ET.Element, path: str, allowed: set[str], required: tuple[str, ...] = ()) -> dict[str, str]:
        for name in el.attrib:
            if name not in allowed:
                self.report("W-UNKNOWN-ATTR", path, f"attribute {name!r} on <{local_name(el.tag)}> ignored")
        for name in required:
            if name not in el.attrib:
                self.report("E-ATTR-MISSING", path, f"<{local_name(el.tag)}> requires attribute {name!r}")
        return dict(el.attrib)

    def children(self, el: ET.Element, path: str) -> list[tuple[str, str, ET.Element]]:
        """(local tag, path, element) for each child, with sibling ordinals."""
        seen: dict[str, int] = {}
        out = []
        repeatable = _REPEATABLE | ({"documentations"} if path.endswith("/documentations") else set())
        for child in el:
            if not isinstance(child.tag, str):
                continue
            tag = local_name(child.tag)
            seen[tag] = seen.get(tag, 0) + 1
            seg = f"{tag}[{seen[tag]}]" if tag in repeatable else tag
            out.append((tag, f"{path}/{seg}", child))
        return out

    def dispatch(
        self,
        el: ET.Element,
        path: str,
        handlers: dict[str, Callable[[ET.Element, str], None]],
        singletons: tuple[str, ...] = (),
    ) -> None:
        seen: set[str] = set()
        for tag, cpath, child in self.children(el, path):
            if tag in singletons:
                if tag in seen:
                    self.report("E-DUP-ELEMENT", cpath, f"<{tag}> may appear only once here")
                    continue
                seen.add(tag)
            handler = handlers.get(tag)
            if handler is None:
                self.report("W-UNKNOWN-ELEMENT", cpath, f"<{tag}> is not part of the formalization; ignored")
            else:
                handler(child, cpath)

    def enum(self, raw: str | None, enum_cls, path: str, what: str):
        value = (raw or "").strip()
        try:
            return enum_cls(value)
        except ValueError:
            allowed = ", ".join(m.value for m in enum_cls)
            self.report("E-ENUM", path, f"{what} {value!r} not one of: {allowed}")
            return value

    # -- shared blocks -----------------------------------------------------

    def hints(self, el: ET.Element, path: str) -> tuple[Hint, ...]:
        out: list[Hint] = []

        def hint(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"from", "text", "score"})
            text = a.get("text")
            if text is None:
                body = normalize(child.text)
                if body:
                    self.repair("W-HINT-BODY", "E-ATTR-MISSING", cpath, "hint text given as element content")
                    text = body
                else:
                    self.report("E-ATTR-MISSING", cpath, "<hint> requires attribute 'text'")
            out.append(Hint(normalize(text), _opt(a.get("from")), _parse_score(a.get("score"))))

        self.attrs(el, path, set())
        self.dispatch(el, path, {"hint": hint})
        return tuple(out)

    def examples(self, el: ET.Element, path: str) -> tuple[Example, ...]:
        out: list[Example] = []

        def example(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"text", "score"}, ("text",))
            nested: list[Example] = []
            self.dispatch(child, cpath, {"examples": lambda e, p: nested.extend(self.examples(e, p))}, ("examples",))
            out.append(Example(normalize(a.get("text")), _parse_score(a.get("score")), tuple(nested)))

        self.attrs(el, path, set())
        self.dispatch(el, path, {"example": example})
        return tuple(out)

    def inputs(self, el: ET.Element, path: str) -> tuple[InputSpec, ...]:
        out: list[InputSpec] = []
        self.attrs(el, path, set())
        for tag, cpath, child in self.children(el, path):
            if tag != "input" or namespace_of(child.tag) not in ("", RNG_NS):
                self.report("W-UNKNOWN-ELEMENT", cpath, f"<{tag}> is not part of the formalization; ignored")
                continue
            a = self.attrs(child, cpath, {"label"}, ("label",))
            label = normalize(a.get("label"))
            try:
                out.append(InputSpec(label, compile_pattern(child, cpath)))
            except NNNError as exc:
                raw = ((child.text or "") + "".join(_raw_xml(c) for c in child)).strip()
                if exc.code == "E-PATTERN-UNSUPPORTED":
                    self.report("W-OPAQUE-INPUT", cpath, exc.diagnostic.message)
                else:
                    self.diags.append(exc.diagnostic)
                out.append(InputSpec(label, None, raw))
        return tuple(out)

    def extras(self, handlers: dict, store: dict) -> dict:
        handlers.setdefault("hints", lambda e, p: store.__setitem__("hints", self.hints(e, p)))
        handlers.setdefault("examples", lambda e, p: store.__setitem__("examples", self.examples(e, p)))
        return handlers

    def labels(self, el: ET.Element, path: str) -> tuple[str, ...]:
        out: list[str] = []

        def label(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"text", "name"})
            if "text" in a:
                if "name" in a:
                    self.report("W-UNKNOWN-ATTR", cpath, "attribute 'name' ignored; 'text' present")
                out.append(normalize(a["text"]))
            elif "name" in a:
                self.repair("W-LABEL-ATTR", "E-ATTR-MISSING", cpath, "label uses attribute 'name' instead of 'text'")
                out.append(normalize(a["name"]))
            else:
                self.report("E-ATTR-MISSING", cpath, "<label> requires attribute 'text'")

        self.attrs(el, path, set())
        self.dispatch(el, path, {"label": label})
        return tuple(out)

    # -- meta and custom ---------------------------------------------------

    def meta(self, el: ET.Element, path: str) -> Meta:
        f: dict = {}
        self.attrs(el, path, set())

        def simple(key: str, attr: str, required: bool = True):
            def handler(child: ET.Element, cpath: str) -> None:
                a = self.attrs(child, cpath, {attr}, (attr,) if required else ())
                f[key] = normalize(a.get(attr))

            return handler

        def definition(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"text", "theme"}, ("text",))
            if "theme" not in a:
                self.repair("W-THEME-MISSING", "E-ATTR-MISSING", cpath, "<definition> requires attribute 'theme'")
            hints: list[Hint] = []
            self.dispatch(child, cpath, {"hints": lambda e, p: hints.extend(self.hints(e, p))}, ("hints",))
            f["definition"] = Definition(normalize(a.get("text")), _opt(a.get("theme")) or None, tuple(hints))

        def validation(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"status"}, ("status",))
            f["status"] = self.enum(a.get("status"), ValidationStatus, cpath, "validation status")

        def date(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"text"}, ("text",))
            raw = (a.get("text") or "").strip()
            try:
                if not _DATE_RE.match(raw):
                    raise ValueError(raw)
                f["date"] = dt.date.fromisoformat(raw)
            except ValueError:
                self.report("E-DATE", cpath, f"{raw!r} is not an ISO 8601 calendar date")
                f["date"] = raw

        handlers = {
            "title": simple("title", "text"),
            "definition": definition,
            "version": simple("version", "id"),
            "validation": validation,
            "institution": simple("institution", "name"),
            "author": simple("author", "name"),
            "validator": simple("validator", "name"),
            "implementer": simple("implementer", "name"),
            "date": date,
        }
        self.dispatch(el, path, handlers, tuple(handlers))
        for tag, key in (("title", "title"), ("definition", "definition"), ("version", "version"),
                         ("validation", "status"), ("date", "date")):
            if key not in f:
                self.report("E-ELEMENT-MISSING", path, f"<meta> requires <{tag}>")
        return Meta(
            title=f.get("title", ""),
            definition=f.get("definition", Definition("")),
            version_id=f.get("version", ""),
            validation_status=f.get("status", ""),
            date=f.get("date"),
            institution=f.get("institution"),
            author=f.get("author"),
            validator=f.get("validator"),
            implementer=f.get("implementer"),
        )

    def custom(self, el: ET.Element, path: str) -> Custom:
        rec: list[Recommendation] = []
        man: list[Mandate] = []
        self.attrs(el, path, set())

        def recommended(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"id", "score"}, ("id", "score"))
            rec.append(Recommendation(normalize(a.get("id")), _parse_score(a.get("score", ""))))

        def mandatory(child: ET.Element, cpath: str) -> None:
            a = self.attrs(child, cpath, {"id"}, ("id",))
            man.append(Mandate(normalize(a.get("id"))))

        self.dispatch(el, path, {"recommended": recommended, "mandatory": mandatory})
        return Custom(tuple(rec), tuple(man))

    # -- guideline ---------------------------------------------------------

    def factor(self, el: ET.Element, path: str) -> Factor:
        a = self.attrs(el, path, {"text", "category", "subcategory", "type", "source"}, ("text",))
        ftype = self.enum(a["type"], FactorType, path, "factor type") if "type" in a else FactorType.RELATED
        store: dict = {}
        nested: list[Factor] = []

        def factors(child: ET.Element, cpath: str) -> None:
            self.attrs(child, cpath, set())
            self.dispatch(child, cpath, {"factor": lambda e, p: nested.append(self.factor(e, p))})

        self.dispatch(el, path, self.extras({"factors": factors}, store), ("hints", "examples", "factors"))
        return Factor(
            text=normalize(a.get("text")),
            category=_opt(a.get("category")),
            subcategory=_opt(a.get("subcategory")),
            factor_type=ftype,
            hints=store.get("hints", ()),
            examples=store.get("examples", ()),
            source=_opt(a.get("source")),
            children=tuple(nested),
        )

    def symptom(self, el: ET.Element, path: str) -> Symptom:
        a = self.attrs(el, path, {"text", "category", "subcategory", "source"}, ("text",))
        store: dict = {}
        self.dispatch(el, path, self.extras({}, store), ("hints", "examples"))
        return Symptom(
            text=normalize(a.get("text")),
            category=_opt(a.get("category")),
            subcategory=_opt(a.get("subcategory")),
            hints=store.get("hints", ()),
            examples=store.get("examples", ()),
            source=_opt(a.get("source")),
        )

    def _with_inputs(self, store: dict) -> dict:
        handlers = self.extras({}, store)
        handlers["inputs"] = lambda e, p: store.__setitem__("inputs", self.inputs(e, p))
        return handlers

    def outcomes(self, el: ET.Element, path: str) -> OutcomesSection:
        a = self.attrs(el, path, {"source"})
        labels: list[tuple[str, ...]] = []
        items: list[Outcome] = []
        missing_ids: list[int] = []

        def outcome(child: ET.Element, cpath: str) -> None:
            oa = self.attrs(child, cpath, {"goal", "text", "id", "source"}, ("goal", "text"))
            goal = self.enum(oa.get("goal"), Goal, cpath, "outcome goal") if "goal" in oa else ""
            if "id" not in oa:
                self.repair("W-ID-SYNTH", "E-ATTR-MISSING", cpath, "<outcome> requires attribute 'id'")
                missing_ids.append(len(items))
            store: dict = {}
            self.dispatch(child, cpath, self._with_inputs(store), ("hints", "examples", "inputs"))
            items.append(
                Outcome(
                    id=normalize(oa.get("id")),
                    goal=goal,
                    text=normalize(oa.get("text")),
                    hints=store.get("hints", ()),
                    examples=store.get("examples", ()),
                    inputs=store.get("inputs", ()),
                    source=_opt(oa.get("source")),
                )
            )

        self.dispatch(el, path, {"labels": lambda e, p: labels.append(self.labels(e, p)), "outcome": outcome}, ("labels",))
        if not labels:
            self.report("E-ELEMENT-MISSING", path, "<outcomes> requires <labels>")
        if missing_ids and self.lenient:
            taken = {o.id for o in items}
            for index in missing_ids:
                n, candidate = index + 1, f"outcome-{index + 1}"
                while candidate in taken:
                    n += 1000
                    candidate = f"outcome-{n}"
                taken.add(candidate)
                old = items[index]
                items[index] = Outcome(candidate, old.goal, old.text, old.hints, old.examples, old.inputs, old.source)
        return OutcomesSection(labels[0] if labels else (), tuple(items), _opt(a.get("source")))

    def task_nodes(self, el: ET.Element, path: str, top: bool = False) -> tuple[TaskNode, ...]:
        nodes: list[TaskNode] = []
        handlers: dict = {"task": lambda e, p: nodes.append(self.task(e, p))}
        for mode in CompositeMode:
            handlers[composite_tag(mode)] = lambda e, p, m=mode: nodes.append(self.composite(e, p, m))
            handlers[f"{mode}-task"] = lambda e, p, m=mode: nodes.append(self.composite(e, p, m, singular=True))
        for tag, cpath, child in self.children(el, path):
            if top and tag == "labels":
                continue
            handler = handlers.get(tag)
            if handler is None:
                self.report("W-UNKNOWN-ELEMENT", cpath, f"<{tag}> is not part of the formalization; ignored")
            else:
                handler(child, cpath)
        return tuple(nodes)

    def task(self, el: ET.Element, path: str) -> AtomicTask:
        a = self.attrs(el, path, {"text", "id", "predictedeffort", "score", "source"}, ("text", "id"))
        store: dict = {}
        self.dispatch(el, path, self._with_inputs(store), ("hints", "examples", "inputs"))
        return AtomicTask(
            id=normalize(a.get("id")),
            text=normalize(a.get("text")),
            predicted_effort=_parse_score(a.get("predictedeffort")),
            score=_parse_score(a.get("score")),
            hints=store.get("hints", ()),
            examples=store.get("examples", ()),
            inputs=store.get("inputs", ()),
            source=_opt(a.get("source")),
        )

    def composite(self, el: ET.Element, path: str, mode: CompositeMode, singular: bool = False) -> CompositeTask:
        if singular:
            tag = local_name(el.tag)
            self.repair("W-COMPOSITE-NAME", "E-ELEMENT-NAME", path, f"<{tag}> should be spelled <{tag}s>")
        a = self.attrs(el, path, {"name", "text", "source"})
        return CompositeTask(mode, self.task_nodes(el, path), _opt(a.get("name")), _opt(a.get("text")), _opt(a.get("source")))

    def tasks(self, el: ET.Element, path: str) -> TasksSection:
        a = self.attrs(el, path, {"source"})
        labels: list[tuple[str, ...]] = []
        for tag, cpath, child in self.children(el, path):
            if tag == "labels":
                if labels:
                    self.report("E-DUP-ELEMENT", cpath, "<labels> may appear only once here")
                else:
                    labels.append(self.labels(child, cpath))
        if not labels:
            self.report("E-ELEMENT-MISSING", path, "<tasks> requires <labels>")
        return TasksSection(labels[0] if labels else (), self.task_nodes(el, path, top=True), _opt(a.get("source")))

    def documentations(self, el: ET.Element, path: str) -> DocumentationsSection:
        a = self.attrs(el, path, {"source"})
        items: list[Documentation] = []

        def item(child: ET.Element, cpath: str) -> None:
            if local_name(child.tag) == "documentations":
                self.repair("W-DOC-ELEMENT", "E-ELEMENT-NAME", cpath, "documentation item should be <documentation>")
            da = self.attrs(child, cpath, {"text", "id", "source"}, ("text", "id"))
            store: dict = {}
            self.dispatch(child, cpath, self._with_inputs(store), ("hints", "examples", "inputs"))
            items.append(
                Documentation(
                    id=normalize(da.get("id")),
                    text=normalize(da.get("text")),
                    hints=store.get("hints", ()),
                    examples=store.get("examples", ()),
                    inputs=store.get("inputs", ()),
                    source=_opt(da.get("source")),
                )
            )

        self.dispatch(el, path, {"documentation": item, "documentations": item})
        return DocumentationsSection(tuple(items), _opt(a.get("source")))

    def guideline(self, el: ET.Element, path: str) -> GuidelineBody:
        a = self.attrs(el, path, {"source"})
        f: dict = {}

        def section(key: str, fn):
            return lambda e, p: f.__setitem__(key, fn(e, p))

        def factors(e: ET.Element, p: str) -> FactorsSection:
            fa = self.attrs(e, p, {"source"})
            items: list[Factor] = []
            self.dispatch(e, p, {"factor": lambda c, cp: items.append(self.factor(c, cp))})
            return FactorsSection(tuple(items), _opt(fa.get("source")))

        def symptoms(e: ET.Element, p: str) -> SymptomsSection:
            sa = self.attrs(e, p, {"source"})
            items: list[Symptom] = []
            self.dispatch(e, p, {"symptom": lambda c, cp: items.append(self.symptom(c, cp))})
            return SymptomsSection(tuple(items), _opt(sa.get("source")))

        handlers = {
            "factors": section("factors", factors),
            "symptoms": section("symptoms", symptoms),
            "outcomes": section("outcomes", self.outcomes),
            "tasks": section("tasks", self.tasks),
            "documentations": section("documentations", self.documentations),
        }
        self.dispatch(el, path, handlers, tuple(handlers))
        return GuidelineBody(source=_opt(a.get("source")), **f)

    def document(self, root: ET.Element) -> GuidelineDocument | None:
        if local_name(root.tag) != "nnn":
            self.report("E-MISSING-SECTION", "/", f"root element must be <nnn>, found <{local_name(root.tag)}>")
            return None
        self.attrs(root, "/", set())
        parts: dict = {}
        handlers = {
            "meta": lambda e, p: parts.__setitem__("meta", self.meta(e, p)),
            "custom": lambda e, p: parts.__setitem__("custom", self.custom(e, p)),
            "guideline": lambda e, p: parts.__setitem__("body", self.guideline(e, p)),
        }
        self.dispatch(root, "", handlers, tuple(handlers))
        missing = [tag for tag, key in (("meta", "meta"), ("guideline", "body")) if key not in parts]
        if missing:
            for tag in missing:
                self.report("E-MISSING-SECTION", "/", f"document requires <{tag}>")
            return None
        return GuidelineDocument(parts["meta"], parts["body"], parts.get("custom", Custom()))


def _raw_xml(el: ET.Element) -> str:
    return ET.tostring(el, encoding="unicode")


def parse_document(text: str | bytes, mode: ParseMode | str = ParseMode.LENIENT) -> ParseResult:
    """Parse NNN XML into a document plus diagnostics. Never raises on bad input."""
    mode = ParseMode(mode)
    try:
        root = parse_xml(text)
    except ValueError as exc:
        return ParseResult(None, (diag("E-XML-MALFORMED", "/", str(exc)),))
    parser = _Parser(mode)
    try:
        doc = parser.document(root)
    except RecursionError:
        return ParseResult(None, (diag("E-XML-MALFORMED", "/", "document nested too deeply"),))
    return ParseResult(doc, tuple(sort_diagnostics(parser.diags)))


# ---------------------------------------------------------------------------
# serialization


def _attrs(**values) -> dict[str, str]:
    out = {}
    for key, value in values.items():
        if value is None:
            continue
        out[key.rstrip("_")] = value.isoformat() if isinstance(value, dt.date) else str(value)
    return out


def _hint_nodes(hints: tuple[Hint, ...]) -> list[Node]:
    if not hints:
        return []
    return [Node("hints", {}, [Node("hint", _attrs(**{"from": h.from_, "text": h.text, "score": h.score})) for h in hints])]


def _example_nodes(examples: tuple[Example, ...]) -> list[Node]:
    if not examples:
        return []
    return [
        Node("examples", {}, [Node("example", _attrs(text=e.text, score=e.score), _example_nodes(e.children)) for e in examples])
    ]


def _input_nodes(inputs: tuple[InputSpec, ...]) -> list[Node]:
    if not inputs:
        return []
    out = []
    for spec in inputs:
        node = Node("input", {"label": spec.label, "xmlns": RNG_NS})
        if spec.pattern is not None:
            node.children = pattern_nodes(spec.pattern)
        else:
            node.raw = spec.raw
        out.append(node)
    return [Node("inputs", {}, out)]


def _extras(node) -> list[Node]:
    return (
        _hint_nodes(getattr(node, "hints", ()))
        + _example_nodes(getattr(node, "examples", ()))
        + _input_nodes(getattr(node, "inputs", ()))
    )


def _factor_node(f: Factor) -> Node:
    kids = _extras(f)
    if f.children:
        kids.append(Node("factors", {}, [_factor_node(c) for c in f.children]))
    attrs = _attrs(text=f.text, category=f.category, subcategory=f.subcategory, type=f.factor_type, source=f.source)
    return Node("factor", attrs, kids)


def _task_node(n: TaskNode) -> Node:
    if isinstance(n, AtomicTask):
        attrs = _attrs(id=n.id, text=n.text, predictedeffort=n.predicted_effort, score=n.score, source=n.source)
        return Node("task", attrs, _extras(n))
    return Node(composite_tag(n.mode), _attrs(name=n.name, text=n.text, source=n.source), [_task_node(c) for c in n.children])


def _labels_node(labels: tuple[str, ...]) -> Node:
    return Node("labels", {}, [Node("label", {"text": label}) for label in labels])


def document_tree(doc: GuidelineDocument) -> Node:
    m = doc.meta
    meta = Node(
        "meta",
        {},
        [
            Node("title", {"text": m.title}),
            Node("definition", {"text": m.definition.text, "theme": m.definition.theme or ""}, _hint_nodes(m.definition.hints)),
            Node("version", {"id": m.version_id}),
            Node("validation", {"status": str(m.validation_status)}),
        ],
    )
    for tag, value in (("institution", m.institution), ("author", m.author), ("validator", m.validator), ("implementer", m.implementer)):
        if value is not None:
            meta.children.append(Node(tag, {"name": value}))
    meta.children.append(Node("date", _attrs(text=m.date if m.date is not None else "")))

    root = Node("nnn", {}, [meta])
    if not doc.custom.is_empty():
        root.children.append(
            Node(
                "custom",
                {},
                [Node("recommended", _attrs(id=r.task_id, score=r.score)) for r in doc.custom.recommended]
                + [Node("mandatory", {"id": x.task_id}) for x in doc.custom.mandatory],
            )
        )

    b = doc.body
    g = Node("guideline", _attrs(source=b.source))
    if b.factors is not None:
        g.children.append(Node("factors", _attrs(source=b.factors.source), [_factor_node(f) for f in b.factors.items]))
    if b.symptoms is not None:
        g.children.append(
            Node(
                "symptoms",
                _attrs(source=b.symptoms.source),
                [
                    Node("symptom", _attrs(text=s.text, category=s.category, subcategory=s.subcategory, source=s.source), _extras(s))
                    for s in b.symptoms.items
                ],
            )
        )
    if b.outcomes is not None:
        g.children.append(
            Node(
                "outcomes",
                _attrs(source=b.outcomes.source),
                [_labels_node(b.outcomes.labels)]
                + [
                    Node("outcome", _attrs(id=o.id, goal=o.goal, text=o.text, source=o.source), _extras(o))
                    for o in b.outcomes.items
                ],
            )
        )
    if b.tasks is not None:
        g.children.append(
            Node("tasks", _attrs(source=b.tasks.source), [_labels_node(b.tasks.labels)] + [_task_node(n) for n in b.tasks.roots])
        )
    if b.documentations is not None:
        g.children.append(
            Node(
                "documentations",
                _attrs(source=b.documentations.source),
                [
                    Node("documentation", _attrs(id=d.id, text=d.text, source=d.source), _extras(d))
                    for d in b.documentations.items
                ],
            )
        )
    root.children.append(g)
    return root


def serialize_document(doc: GuidelineDocument) -> str:
    """Canonical XML: 2-space indent, sorted attributes, plural composite names."""
    return render_document(document_tree(doc))
