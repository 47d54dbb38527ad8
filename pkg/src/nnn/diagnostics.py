"""Diagnostics shared by every stage: severity, stable codes, reports."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)


class Severity(StrEnum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


# code -> (default severity, one-line meaning). Codes are a stable contract;
# messages are not.
CATALOG: dict[str, tuple[Severity, str]] = {
    # parsing
    "E-XML-MALFORMED": (Severity.ERROR, "input is not well-formed UTF-8 XML"),
    "E-MISSING-SECTION": (Severity.ERROR, "document lacks <nnn> root, <meta> or <guideline>"),
    "E-DUP-ELEMENT": (Severity.ERROR, "element allowed once appears more than once"),
    "E-ELEMENT-MISSING": (Severity.ERROR, "required child element absent"),
    "E-ATTR-MISSING": (Severity.ERROR, "required attribute absent"),
    "E-ELEMENT-NAME": (Severity.ERROR, "non-canonical element name (strict mode)"),
    "W-UNKNOWN-ELEMENT": (Severity.WARNING, "element not part of the formalization; ignored"),
    "W-UNKNOWN-ATTR": (Severity.WARNING, "attribute not part of the formalization; ignored"),
    "W-LABEL-ATTR": (Severity.WARNING, "label uses attribute name instead of text; repaired"),
    "W-THEME-MISSING": (Severity.WARNING, "definition lacks theme; treated as absent"),
    "W-COMPOSITE-NAME": (Severity.WARNING, "singular composite element name; repaired"),
    "W-HINT-BODY": (Severity.WARNING, "hint text given as element content; repaired"),
    "W-ID-SYNTH": (Severity.WARNING, "outcome lacks id; identifier synthesized"),
    "W-DOC-ELEMENT": (Severity.WARNING, "documentation item spelled <documentations>; repaired"),
    "W-OPAQUE-INPUT": (Severity.WARNING, "input body outside the supported schema subset"),
    # structure
    "E-ENUM": (Severity.ERROR, "value outside its enumeration"),
    "E-DATE": (Severity.ERROR, "value is not an ISO 8601 calendar date"),
    "E-INTEGER": (Severity.ERROR, "score is not an integer"),
    "E-SCORE-RANGE": (Severity.ERROR, "score outside 1..10"),
    "E-EFFORT": (Severity.ERROR, "predictedeffort is not a non-negative integer"),
    "E-FACTOR-DEPTH": (Severity.ERROR, "factors nested deeper than one level"),
    "E-EXAMPLE-DEPTH": (Severity.ERROR, "examples nested deeper than one level"),
    "E-SUBCAT": (Severity.ERROR, "subcategory without category"),
    "E-EMPTY-COMPOSITE": (Severity.ERROR, "sequential/parallel composite without children"),
    "E-EMPTY-TEXT": (Severity.ERROR, "hint text or input label is empty"),
    "E-PATTERN-UNSUPPORTED": (Severity.ERROR, "schema construct outside the supported subset"),
    "E-PATTERN-PARAM": (Severity.ERROR, "datatype parameter invalid for its datatype"),
    # semantics
    "E-DUP-ID": (Severity.ERROR, "identifier repeated within its scope"),
    "W-ID-COLLISION": (Severity.WARNING, "identifier reused across task/outcome/documentation scopes"),
    "E-DANGLING-REF": (Severity.ERROR, "custom entry references an unknown task id"),
    "W-MAND-AND-REC": (Severity.WARNING, "task is both mandatory and recommended"),
    "W-DUP-CUSTOM": (Severity.WARNING, "repeated custom entry for one task; ignored"),
    "W-EMPTY-SECTION": (Severity.WARNING, "guideline section present but empty"),
    "E-BAD-PATH": (Severity.ERROR, "document path addresses nothing"),
    # records
    "E-REC-ELEMENT": (Severity.ERROR, "record element missing or misnamed"),
    "E-REC-DATATYPE": (Severity.ERROR, "record value does not parse as its datatype"),
    "E-REC-BOUNDS": (Severity.ERROR, "record value outside its length or range bounds"),
    "E-REC-EXTRA": (Severity.ERROR, "record content not allowed by the pattern"),
    # export / store
    "E-EXPORT-EMPTY": (Severity.ERROR, "document has no tasks to export"),
    "W-FIDELITY": (Severity.WARNING, "block emitted through a lossy workaround"),
    "I-LINEARIZED": (Severity.INFO, "parallel branches linearized for a sequential target"),
    "E-IO": (Severity.ERROR, "file or directory unreadable"),
}


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    path: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {
            "severity": str(self.severity),
            "code": self.code,
            "path": self.path,
            "message": self.message,
        }

    def render(self) -> str:
        return f"{self.severity}: {self.code} at {self.path}: {self.message}"


def diag(code: str, path: str, message: str, severity: Severity | None = None) -> Diagnostic:
    """Build a diagnostic, defaulting severity from the catalog."""
    if code not in CATALOG:
        raise KeyError(f"unknown diagnostic code {code!r}")
    return Diagnostic(severity or CATALOG[code][0], code, path, message)


class NNNError(Exception):
    """Failure carrying a catalogued diagnostic."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic

    @property
    def code(self) -> str:
        return self.diagnostic.code


_SEGMENT = re.compile(r"^(?P<name>[^\[\]]*)(?:\[(?P<ordinal>\d+)\])?$")


def path_key(path: str) -> tuple:
    """Sort key comparing ordinals numerically (factor[3] < factor[10])."""
    key = []
    for seg in path.strip("/").split("/"):
        m = _SEGMENT.match(seg)
        if m is None:
            key.append((seg, 0))
        else:
            key.append((m["name"], int(m["ordinal"] or 0)))
    return tuple(key)


def sort_diagnostics(diagnostics: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(diagnostics, key=lambda d: (path_key(d.path), d.code, d.message))


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, diagnostics: Iterable[Diagnostic]) -> ValidationReport:
        return cls(tuple(sort_diagnostics(diagnostics)))

    @property
    def error_count(self) -> int:
        return sum(d.severity == Severity.ERROR for d in self.diagnostics)

    @property
    def warning_count(self) -> int:
        return sum(d.severity == Severity.WARNING for d in self.diagnostics)

    @property
    def ok(self) -> bool:
        return self.error_count == 0

    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]

    def to_json(self) -> str:
        return json.dumps([d.to_dict() for d in self.diagnostics], indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [d.render() for d in self.diagnostics]
        lines.append(f"{self.error_count} error(s), {self.warning_count} warning(s)")
        return "\n".join(lines)
