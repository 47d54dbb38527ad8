"""Safe XML parsing and a small deterministic writer."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from defusedxml import DefusedXmlException
from defusedxml.ElementTree import fromstring as _safe_fromstring

_DECL_ENCODING = re.compile(rb"""^\s*<\?xml[^>]*?encoding\s*=\s*["']([A-Za-z0-9._-]+)["']""")


def local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if tag.startswith("{") else tag


def namespace_of(tag: str) -> str:
    return tag[1:].split("}", 1)[0] if tag.startswith("{") else ""


def parse_xml(data: str | bytes) -> ET.Element:
    """Parse UTF-8 XML with DTDs and entity declarations refused.

    Raises ValueError with a human-readable reason on any failure.
    """
    raw = data.encode("utf-8", "surrogatepass") if isinstance(data, str) else bytes(data)
    m = _DECL_ENCODING.match(raw[:200])
    if m and m.group(1).decode("ascii").lower().replace("_", "-") not in ("utf-8", "utf8"):
        raise ValueError(f"unsupported encoding {m.group(1).decode('ascii')!r}; only UTF-8 is accepted")
    try:
        raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"invalid UTF-8 at byte {exc.start}") from None
    try:
        return _safe_fromstring(raw, forbid_dtd=True)
    except ET.ParseError as exc:
        raise ValueError(f"not well-formed: {exc}") from None
    except DefusedXmlException as exc:
        raise ValueError(f"forbidden construct: {exc}") from None
    except (ValueError, LookupError) as exc:
        raise ValueError(f"unreadable XML: {exc}") from None


@dataclass
class Node:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list[Node] = field(default_factory=list)
    text: str | None = None
    sort_attrs: bool = True
    raw: str | None = None  # pre-rendered markup, emitted verbatim


def _attr_text(node: Node) -> str:
    items = sorted(node.attrs.items()) if node.sort_attrs else list(node.attrs.items())
    return "".join(f" {k}={quoteattr(v)}" for k, v in items)


def render(node: Node, level: int = 0, indent: str = "  ") -> str:
    pad = indent * level
    head = f"{pad}<{node.tag}{_attr_text(node)}"
    if node.raw:
        return f"{head}>\n{pad}{indent}{node.raw}\n{pad}</{node.tag}>"
    if node.children:
        inner = "\n".join(render(c, level + 1, indent) for c in node.children)
        return f"{head}>\n{inner}\n{pad}</{node.tag}>"
    if node.text is not None and node.text != "":
        return f"{head}>{escape(node.text)}</{node.tag}>"
    return f"{head}/>"


def render_document(root: Node) -> str:
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + render(root) + "\n"
