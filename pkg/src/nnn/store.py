"""Directory-backed guideline repository with an optional JSON cache."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from nnn.coverage import BuildingBlock, present_blocks
from nnn.diagnostics import Diagnostic, NNNError, Severity, diag
from nnn.xmlio import ParseMode, parse_document

SUFFIX = ".nnn.xml"
CACHE_NAME = ".nnn-index.json"
CACHE_SCHEMA = 1


@dataclass(frozen=True)
class IndexEntry:
    path: str
    title: str
    version: str
    status: str
    nic_labels: tuple[str, ...]
    noc_labels: tuple[str, ...]
    blocks: frozenset[BuildingBlock]

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "title": self.title,
            "version": self.version,
            "status": self.status,
            "nic_labels": list(self.nic_labels),
            "noc_labels": list(self.noc_labels),
            "blocks": sorted((str(b) for b in self.blocks), key=lambda s: int(s[1:])),
        }

    @classmethod
    def from_dict(cls, data: dict) -> IndexEntry:
        return cls(
            path=data["path"],
            title=data["title"],
            version=data["version"],
            status=data["status"],
            nic_labels=tuple(data["nic_labels"]),
            noc_labels=tuple(data["noc_labels"]),
            blocks=frozenset(BuildingBlock(b) for b in data["blocks"]),
        )


@dataclass(frozen=True)
class RepoIndex:
    entries: tuple[IndexEntry, ...] = ()

    def to_json(self) -> str:
        return json.dumps([e.to_dict() for e in self.entries], indent=2, ensure_ascii=False) + "\n"


def _entry(path: Path) -> tuple[IndexEntry | None, list[Diagnostic]]:
    try:
        text = path.read_bytes()
    except OSError as exc:
        return None, [diag("E-IO", str(path), f"cannot read file: {exc.strerror or exc}")]
    result = parse_document(text, ParseMode.LENIENT)
    prefixed = [
        Diagnostic(d.severity, d.code, d.path, f"{path.name}: {d.message}") for d in result.diagnostics
    ]
    doc = result.document
    if doc is None or any(d.severity == Severity.ERROR for d in result.diagnostics):
        return None, prefixed
    body = doc.body
    entry = IndexEntry(
        path=str(path),
        title=doc.meta.title,
        version=doc.meta.version_id,
        status=str(doc.meta.validation_status),
        nic_labels=tuple(body.tasks.labels) if body.tasks else (),
        noc_labels=tuple(body.outcomes.labels) if body.outcomes else (),
        blocks=frozenset(present_blocks(doc)),
    )
    return entry, prefixed


def _listing(root: Path) -> list[Path]:
    try:
        return sorted(p for p in root.iterdir() if p.name.endswith(SUFFIX) and p.is_file())
    except OSError as exc:
        raise NNNError(diag("E-IO", str(root), f"cannot read directory: {exc.strerror or exc}")) from exc


def _fingerprint(files: list[Path]) -> list[list]:
    out = []
    for p in files:
        try:
            st = p.stat()
        except OSError:
            continue
        out.append([p.name, st.st_size, st.st_mtime_ns])
    return out


def build_index(directory: str | os.PathLike, use_cache: bool = False) -> tuple[RepoIndex, list[Diagnostic]]:
    """Leniently parse every ``*.nnn.xml`` in ``directory`` (non-recursive).

    Files with parse errors yield diagnostics but no entry. Raises
    NNNError(E-IO) when the directory cannot be listed. With ``use_cache``
    a matching ``.nnn-index.json`` is reused and a fresh one written.
    """
    root = Path(directory)
    files = _listing(root)
    fingerprint = _fingerprint(files)
    if use_cache:
        cached = load_cache(root, fingerprint)
        if cached is not None:
            return cached
    entries: list[IndexEntry] = []
    diagnostics: list[Diagnostic] = []
    for path in files:
        entry, found = _entry(path)
        diagnostics += found
        if entry is not None:
            entries.append(entry)
    entries.sort(key=lambda e: (e.title.casefold(), e.title, e.path))
    index = RepoIndex(tuple(entries))
    if use_cache:
        try:
            save_cache(index, diagnostics, fingerprint, root)
        except OSError:
            pass  # a cache is optional
    return index, diagnostics


def find(
    index: RepoIndex,
    title: str | None = None,
    label: str | None = None,
    block: BuildingBlock | str | None = None,
) -> list[IndexEntry]:
    """Entries matching every given criterion."""
    wanted = BuildingBlock(block) if block is not None else None
    hits = []
    for e in index.entries:
        if title is not None and e.title.casefold() != title.casefold():
            continue
        if label is not None and label not in e.nic_labels + e.noc_labels:
            continue
        if wanted is not None and wanted not in e.blocks:
            continue
        hits.append(e)
    return hits


def save_cache(index: RepoIndex, diagnostics: list[Diagnostic], fingerprint: list, directory: str | os.PathLike) -> Path:
    target = Path(directory) / CACHE_NAME
    payload = {
        "schema": CACHE_SCHEMA,
        "files": fingerprint,
        "entries": [{**e.to_dict(), "path": Path(e.path).name} for e in index.entries],
        "diagnostics": [d.to_dict() for d in diagnostics],
    }
    tmp = target.with_name(CACHE_NAME + ".tmp")
    tmp.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    os.replace(tmp, target)
    return target


def load_cache(directory: str | os.PathLike, fingerprint: list) -> tuple[RepoIndex, list[Diagnostic]] | None:
    """The cached result, or None when missing, stale, or of another schema."""
    root = Path(directory)
    try:
        data = json.loads((root / CACHE_NAME).read_text(encoding="utf-8"))
        if data.get("schema") != CACHE_SCHEMA or data.get("files") != fingerprint:
            return None
        index = RepoIndex(
            tuple(IndexEntry.from_dict({**e, "path": str(root / e["path"])}) for e in data["entries"])
        )
        diagnostics = [
            Diagnostic(Severity(d["severity"]), d["code"], d["path"], d["message"]) for d in data["diagnostics"]
        ]
        return index, diagnostics
    except (OSError, ValueError, KeyError, TypeError, AttributeError):
        return None
