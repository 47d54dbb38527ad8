"""Embedded documentation schemas: a small RelaxNG subset.

``<input>`` bodies are compiled into an immutable pattern tree and used to
check documentation records (plain XML fragments). Supported constructs:
``element``, ``attribute``, ``text``, ``data`` (string/integer/date with
length or inclusive-bound params), ``choice``, ``optional``, ``oneOrMore``,
``zeroOrMore``, ``value`` and fixed text inside an ``element``.
"""

from __future__ import annotations

import datetime as dt
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Union

from nnn._xml import Node, local_name, namespace_of, parse_xml
from nnn.diagnostics import Diagnostic, NNNError, ValidationReport, diag

RNG_NS = "http://relaxng.org/ns/structure/1.0"

DATATYPES = ("string", "integer", "date")
_PARAMS_FOR = {
    "string": ("maxLength", "minLength"),
    "integer": ("minInclusive", "maxInclusive"),
    "date": ("minInclusive", "maxInclusive"),
}
_INT_RE = re.compile(r"^[+-]?\d+$")
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


@dataclass(frozen=True)
class Element:
    name: str
    children: tuple[Pattern, ...] = ()


@dataclass(frozen=True)
class Attribute:
    name: str
    content: Pattern = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.content is None:
            object.__setattr__(self, "content", Text())


@dataclass(frozen=True)
class Text:
    pass


@dataclass(frozen=True)
class Data:
    datatype: str
    params: tuple[tuple[str, object], ...] = ()

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        return None


@dataclass(frozen=True)
class Choice:
    alternatives: tuple[Pattern, ...]


@dataclass(frozen=True)
class Optional:
    inner: Pattern


@dataclass(frozen=True)
class OneOrMore:
    inner: Pattern


@dataclass(frozen=True)
class ZeroOrMore:
    inner: Pattern


@dataclass(frozen=True)
class Literal:
    text: str


Pattern = Union[Element, Attribute, Text, Data, Choice, Optional, OneOrMore, ZeroOrMore, Literal]

_TEXTISH = (Text, Data, Literal)


# ---------------------------------------------------------------------------
# compilation


def _unsupported(path: str, what: str) -> NNNError:
    return NNNError(diag("E-PATTERN-UNSUPPORTED", path, what))


def _bad_param(path: str, what: str) -> NNNError:
    return NNNError(diag("E-PATTERN-PARAM", path, what))


def _parse_param(datatype: str, name: str, raw: str, path: str):
    raw = raw.strip()
    if datatype == "date":
        if not _DATE_RE.match(raw):
            raise _bad_param(path, f"param {name}={raw!r} is not an ISO date")
        try:
            return dt.date.fromisoformat(raw)
        except ValueError:
            raise _bad_param(path, f"param {name}={raw!r} is not an ISO date") from None
    if not _INT_RE.match(raw):
        raise _bad_param(path, f"param {name}={raw!r} is not an integer")
    value = int(raw)
    if datatype == "string" and value < 0:
        raise _bad_param(path, f"param {name} must be non-negative")
    return value


def _pattern_children(el: ET.Element, path: str) -> list[ET.Element | str]:
    """Child pattern elements and any non-blank text, in document order."""
    items: list[ET.Element | str] = []
    if el.text and el.text.strip():
        items.append(el.text)
    for child in el:
        items.append(child)
        if child.tail and child.tail.strip():
            items.append(child.tail)
    return items


def _check_attrs(el: ET.Element, allowed: set[str], path: str) -> None:
    extra = sorted(set(el.attrib) - allowed - {"datatypeLibrary"})
    if extra:
        raise _unsupported(path, f"attribute(s) {', '.join(extra)} not supported on <{local_name(el.tag)}>")


def _compile_one(item: ET.Element | str, path: str) -> Pattern:
    if isinstance(item, str):
        return Literal(item)
    ns = namespace_of(item.tag)
    tag = local_name(item.tag)
    if ns not in ("", RNG_NS):
        raise _unsupported(path, f"element <{tag}> outside the RelaxNG namespace")
    here = f"{path}/{tag}"
    if tag == "element":
        _check_attrs(item, {"name"}, here)
        name = item.get("name")
        if not name:
            raise _unsupported(here, "element patterns need a name attribute (name classes unsupported)")
        kids = tuple(_compile_one(c, here) for c in _pattern_children(item, here))
        return Element(name, kids)
    if tag == "attribute":
        _check_attrs(item, {"name"}, here)
        name = item.get("name")
        if not name:
            raise _unsupported(here, "attribute patterns need a name attribute")
        kids = _pattern_children(item, here)
        if len(kids) > 1:
            raise _unsupported(here, "attribute content must be a single pattern")
        content = _compile_one(kids[0], here) if kids else Text()
        if not _is_textish(content):
            raise _unsupported(here, "attribute content must be text, data, value or a choice of them")
        return Attribute(name, content)
    if tag == "text":
        _check_attrs(item, set(), here)
        if len(item):
            raise _unsupported(here, "<text/> takes no children")
        return Text()
    if tag == "value":
        _check_attrs(item, {"type"}, here)
        if len(item):
            raise _unsupported(here, "<value> takes text only")
        return Literal(item.text or "")
    if tag == "data":
        _check_attrs(item, {"type"}, here)
        datatype = item.get("type", "")
        if datatype not in DATATYPES:
            raise _unsupported(here, f"datatype {datatype!r} not supported (string, integer, date)")
        params: dict[str, object] = {}
        for child in item:
            if local_name(child.tag) != "param" or namespace_of(child.tag) not in ("", RNG_NS):
                raise _unsupported(here, f"<{local_name(child.tag)}> not supported inside <data>")
            pname = child.get("name", "")
            if pname not in _PARAMS_FOR[datatype]:
                raise _bad_param(here, f"param {pname!r} not valid for datatype {datatype}")
            if pname in params:
                raise _bad_param(here, f"param {pname!r} given twice")
            params[pname] = _parse_param(datatype, pname, child.text or "", here)
        lo_key, hi_key = ("minLength", "maxLength") if datatype == "string" else ("minInclusive", "maxInclusive")
        if lo_key in params and hi_key in params and params[lo_key] > params[hi_key]:
            raise _bad_param(here, f"{lo_key} exceeds {hi_key}")
        return Data(datatype, tuple(sorted(params.items())))
    if tag in ("choice", "optional", "oneOrMore", "zeroOrMore"):
        _check_attrs(item, set(), here)
        kids = tuple(_compile_one(c, here) for c in _pattern_children(item, here))
        if tag == "choice":
            if not kids:
                raise _unsupported(here, "empty <choice>")
            return Choice(kids)
        if len(kids) != 1:
            raise _unsupported(here, f"<{tag}> must wrap exactly one pattern (implicit groups unsupported)")
        return {"optional": Optional, "oneOrMore": OneOrMore, "zeroOrMore": ZeroOrMore}[tag](kids[0])
    raise _unsupported(here, f"<{tag}> is outside the supported subset")


def _is_textish(p: Pattern) -> bool:
    if isinstance(p, _TEXTISH):
        return True
    return isinstance(p, Choice) and all(_is_textish(a) for a in p.alternatives)


def compile_pattern(fragment: ET.Element | str, path: str = "/input") -> Pattern:
    """Compile an ``<input>`` element (or a bare pattern element) to a pattern.

    Raises NNNError with E-PATTERN-UNSUPPORTED or E-PATTERN-PARAM.
    """
    if isinstance(fragment, str):
        try:
            fragment = parse_xml(fragment)
        except ValueError as exc:
            raise NNNError(diag("E-XML-MALFORMED", path, str(exc))) from None
    if local_name(fragment.tag) == "input":
        items = _pattern_children(fragment, path)
        if len(items) != 1:
            raise _unsupported(path, f"input body must hold exactly one pattern, found {len(items)}")
        return _compile_one(items[0], path)
    return _compile_one(fragment, "")


def pattern_nodes(p: Pattern) -> list[Node | str]:
    """Canonical RelaxNG nodes for a pattern (inverse of compilation)."""
    if isinstance(p, Element):
        if len(p.children) == 1 and isinstance(p.children[0], Literal):
            return [Node("element", {"name": p.name}, text=p.children[0].text)]
        kids = [n for c in p.children for n in pattern_nodes(c)]
        return [Node("element", {"name": p.name}, kids)]
    if isinstance(p, Attribute):
        inner = [] if isinstance(p.content, Text) else pattern_nodes(p.content)
        return [Node("attribute", {"name": p.name}, inner)]
    if isinstance(p, Text):
        return [Node("text")]
    if isinstance(p, Literal):
        return [Node("value", text=p.text)]
    if isinstance(p, Data):
        params = [
            Node("param", {"name": k}, text=v.isoformat() if isinstance(v, dt.date) else str(v))
            for k, v in p.params
        ]
        return [Node("data", {"type": p.datatype}, params)]
    tag = {Choice: "choice", Optional: "optional", OneOrMore: "oneOrMore", ZeroOrMore: "zeroOrMore"}[type(p)]
    inner = p.alternatives if isinstance(p, Choice) else (p.inner,)
    return [Node(tag, {}, [n for c in inner for n in pattern_nodes(c)])]


# ---------------------------------------------------------------------------
# record validation


def parse_record(text: str | bytes) -> ET.Element:
    try:
        return parse_xml(text)
    except ValueError as exc:
        raise NNNError(diag("E-XML-MALFORMED", "/", str(exc))) from None


def is_selector(p: Element) -> bool:
    """An element whose children are all literal-valued elements.

    Such a body (``<select><yes>Yes</yes><no>No</no></select>``) is read as
    a choice: the record names exactly one of the child elements.
    """
    return len(p.children) >= 2 and all(
        isinstance(c, Element) and len(c.children) == 1 and isinstance(c.children[0], Literal)
        for c in p.children
    )


def _content(p: Element) -> tuple[Pattern, ...]:
    return (Choice(p.children),) if is_selector(p) else p.children


def _full_text(el: ET.Element) -> str:
    return (el.text or "") + "".join(c.tail or "" for c in el)


def _bounds(lo, hi) -> str:
    if lo is None:
        return f"at most {hi}"
    if hi is None:
        return f"at least {lo}"
    return f"between {lo} and {hi}"


def _check_data(p: Data, value: str, path: str) -> list[Diagnostic]:
    if p.datatype == "string":
        n = len(value)
        lo, hi = p.param("minLength"), p.param("maxLength")
        if (lo is not None and n < lo) or (hi is not None and n > hi):
            return [diag("E-REC-BOUNDS", path, f"length {n}, expected {_bounds(lo, hi)}")]
        return []
    raw = value.strip()
    if p.datatype == "integer":
        if not _INT_RE.match(raw):
            return [diag("E-REC-DATATYPE", path, f"{raw!r} is not an integer")]
        parsed: object = int(raw)
    else:
        try:
            if not _DATE_RE.match(raw):
                raise ValueError
            parsed = dt.date.fromisoformat(raw)
        except ValueError:
            return [diag("E-REC-DATATYPE", path, f"{raw!r} is not an ISO date")]
    lo, hi = p.param("minInclusive"), p.param("maxInclusive")
    if (lo is not None and parsed < lo) or (hi is not None and parsed > hi):
        return [diag("E-REC-BOUNDS", path, f"{raw}, expected {_bounds(lo, hi)}")]
    return []


def _check_literal(p: Literal, value: str, path: str) -> list[Diagnostic]:
    got = value.strip()
    if got and got != p.text.strip():
        return [diag("E-REC-DATATYPE", path, f"expected fixed value {p.text.strip()!r}, got {got!r}")]
    return []


def _check_textish(p: Pattern, value: str, path: str) -> list[Diagnostic]:
    if isinstance(p, Text):
        return []
    if isinstance(p, Data):
        return _check_data(p, value, path)
    if isinstance(p, Literal):
        return _check_literal(p, value, path)
    best: list[Diagnostic] | None = None
    for alt in p.alternatives:
        errs = _check_textish(alt, value, path)
        if not errs:
            return []
        if best is None or len(errs) < len(best):
            best = errs
    return best or []


# matcher state: (next child index, consumed attribute names, text matched)
_State = tuple[int, frozenset, bool]
_States = dict


class _Ctx:
    __slots__ = ("children", "attrs", "text", "path", "child_paths")

    def __init__(self, el: ET.Element | None, path: str, children: list[ET.Element] | None = None):
        self.children = list(el) if el is not None else (children or [])
        self.attrs = dict(el.attrib) if el is not None else {}
        self.text = _full_text(el) if el is not None else ""
        self.path = path
        counts: dict[str, int] = {}
        for c in self.children:
            counts[c.tag] = counts.get(c.tag, 0) + 1
        seen: dict[str, int] = {}
        self.child_paths = []
        base = "" if path == "/" else path
        for c in self.children:
            seen[c.tag] = seen.get(c.tag, 0) + 1
            suffix = f"[{seen[c.tag]}]" if counts[c.tag] > 1 else ""
            self.child_paths.append(f"{base}/{local_name(c.tag)}{suffix}")


def _merge(into: _States, state: _State, errs: tuple) -> bool:
    old = into.get(state)
    if old is None or len(errs) < len(old):
        into[state] = errs
        return True
    return False


def _step(p: Pattern, ctx: _Ctx, states: _States) -> _States:
    out: _States = {}
    if isinstance(p, Element):
        for (pos, used, txt), errs in states.items():
            if pos < len(ctx.children) and ctx.children[pos].tag == p.name:
                sub = _match_element(p, ctx.children[pos], ctx.child_paths[pos])
                _merge(out, (pos + 1, used, txt), errs + tuple(sub))
    elif isinstance(p, Attribute):
        for (pos, used, txt), errs in states.items():
            if p.name in ctx.attrs and p.name not in used:
                sub = _check_textish(p.content, ctx.attrs[p.name], f"{ctx.path}/@{p.name}")
                _merge(out, (pos, used | {p.name}, txt), errs + tuple(sub))
    elif isinstance(p, _TEXTISH):
        sub = tuple(_check_textish(p, ctx.text, ctx.path))
        for (pos, used, _txt), errs in states.items():
            _merge(out, (pos, used, True), errs + sub)
    elif isinstance(p, Choice):
        for alt in p.alternatives:
            for s, errs in _step(alt, ctx, states).items():
                _merge(out, s, errs)
    elif isinstance(p, (Optional, ZeroOrMore)):
        for s, errs in states.items():
            _merge(out, s, errs)
        inner = p.inner if isinstance(p, Optional) else OneOrMore(p.inner)
        for s, errs in _step(inner, ctx, states).items():
            _merge(out, s, errs)
    elif isinstance(p, OneOrMore):
        frontier = _step(p.inner, ctx, states)
        for s, errs in frontier.items():
            _merge(out, s, errs)
        while frontier:
            nxt: _States = {}
            for s, errs in _step(p.inner, ctx, frontier).items():
                if _merge(out, s, errs):
                    nxt[s] = out[s]
            frontier = nxt
    else:  # pragma: no cover - exhaustive over Pattern
        raise TypeError(f"not a pattern: {p!r}")
    return out


def _run(content: tuple[Pattern, ...], ctx: _Ctx) -> _States:
    states: _States = {(0, frozenset(), False): ()}
    for p in content:
        states = _step(p, ctx, states)
        if not states:
            break
    return states


def _finish(states: _States, ctx: _Ctx, what: str) -> list[Diagnostic]:
    has_text = bool(ctx.text.strip())
    n = len(ctx.children)
    full = [
        errs
        for (pos, used, txt), errs in states.items()
        if pos == n and used == frozenset(ctx.attrs) and (txt or not has_text)
    ]
    if full:
        return list(min(full, key=len))
    if not states:
        return [diag("E-REC-ELEMENT", ctx.path, f"content of {what} does not match the pattern")]
    (pos, used, txt), errs = max(states.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), -len(kv[1])))
    if pos < n:
        extra = diag("E-REC-EXTRA", ctx.child_paths[pos], f"unexpected element <{local_name(ctx.children[pos].tag)}>")
    elif used != frozenset(ctx.attrs):
        name = sorted(set(ctx.attrs) - used)[0]
        extra = diag("E-REC-EXTRA", f"{ctx.path}/@{name}", f"unexpected attribute {name!r}")
    else:
        extra = diag("E-REC-EXTRA", ctx.path, "unexpected text content")
    return list(errs) + [extra]


def _match_element(p: Element, el: ET.Element, path: str) -> list[Diagnostic]:
    ctx = _Ctx(el, path)
    return _finish(_run(_content(p), ctx), ctx, f"<{p.name}>")


def validate_record(pattern: Pattern, record: ET.Element | str) -> ValidationReport:
    """Check a documentation record against a compiled pattern.

    Attributes match unordered, child elements in order. The report is
    empty exactly when the record conforms.
    """
    if isinstance(record, (str, bytes)):
        record = parse_record(record)
    ctx = _Ctx(None, "/", [record])
    states = _run((pattern,), ctx)
    if not any(pos == 1 for pos, _, _ in states):
        tag = local_name(record.tag)
        return ValidationReport.of(
            [diag("E-REC-ELEMENT", ctx.child_paths[0], f"record root <{tag}> does not match the pattern")]
        )
    return ValidationReport.of(_finish(states, ctx, "record"))
