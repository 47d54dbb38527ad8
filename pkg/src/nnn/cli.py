"""Command-line front end: ``nnn <subcommand> ...``.

Exit codes: 0 when no error diagnostics were emitted, 1 when some were,
2 for usage errors and unreadable inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from nnn.advise import advise_order
from nnn.coverage import BLOCK_NAMES, BuildingBlock, Standard, compare_report, detect_blocks
from nnn.diagnostics import Diagnostic, NNNError, Severity, ValidationReport
from nnn.export import export
from nnn.inputschema import validate_record
from nnn.model import AtomicTask, Documentation, GuidelineDocument, InputSpec, Outcome, iter_guideline
from nnn.store import build_index, find
from nnn.taskgraph import compile_graph, to_dot, topological_order
from nnn.validate import validate_document
from nnn.xmlio import ParseMode, parse_document

EXIT_OK, EXIT_ERRORS, EXIT_USAGE = 0, 1, 2

_COLORS = {Severity.ERROR: "31", Severity.WARNING: "33", Severity.INFO: "36"}


class _UsageError(Exception):
    pass


def _use_color(stream) -> bool:
    mode = os.environ.get("NNN_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _emit_diagnostics(diagnostics: list[Diagnostic]) -> None:
    color = _use_color(sys.stderr)
    for d in diagnostics:
        line = d.render()
        if color:
            sev = str(d.severity)
            line = f"\x1b[{_COLORS[d.severity]}m{sev}\x1b[0m" + line[len(sev):]
        print(line, file=sys.stderr)


def _dedupe(diagnostics) -> list[Diagnostic]:
    seen: set[tuple] = set()
    out = []
    for d in diagnostics:
        key = (d.severity, d.code, d.path)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


def _has_errors(diagnostics) -> bool:
    return any(d.severity == Severity.ERROR for d in diagnostics)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path: str) -> tuple[GuidelineDocument | None, list[Diagnostic]]:
    """Lenient parse; the document is None when parsing produced errors."""
    result = parse_document(_read(path), ParseMode.LENIENT)
    errors = [d for d in result.diagnostics if d.severity == Severity.ERROR]
    if result.document is None or errors:
        return None, list(result.diagnostics)
    return result.document, list(result.diagnostics)


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    mode = ParseMode.STRICT if args.strict else ParseMode.LENIENT
    result = parse_document(_read(args.file), mode)
    found = list(result.diagnostics)
    if result.document is not None:
        found += validate_document(result.document, refs_warn=args.refs_warn).diagnostics
    report = ValidationReport.of(_dedupe(found))
    if args.json:
        _print_json(
            {
                "file": args.file,
                "ok": report.ok,
                "errors": report.error_count,
                "warnings": report.warning_count,
                "diagnostics": [d.to_dict() for d in report.diagnostics],
            }
        )
    else:
        _emit_diagnostics(list(report.diagnostics))
        status = "ok" if report.ok else "invalid"
        print(f"{args.file}: {status} ({report.error_count} error(s), {report.warning_count} warning(s))")
    return EXIT_OK if report.ok else EXIT_ERRORS


def _loaded_or_fail(path: str, as_json: bool = False):
    doc, found = _load(path)
    if doc is None:
        if as_json:
            _print_json({"file": path, "diagnostics": [d.to_dict() for d in found]})
        else:
            _emit_diagnostics(found)
    return doc


def cmd_graph(args) -> int:
    doc = _loaded_or_fail(args.file)
    if doc is None:
        return EXIT_ERRORS
    try:
        graph = compile_graph(doc)
    except NNNError as exc:
        _emit_diagnostics([exc.diagnostic])
        return EXIT_ERRORS
    if args.dot:
        sys.stdout.write(to_dot(graph, doc.meta.title))
        return EXIT_OK
    order = topological_order(graph)
    rank = {task_id: i for i, task_id in enumerate(order)}
    print(f"tasks: {len(graph.nodes)}")
    print("order: " + ", ".join(order))
    for a, b in sorted(graph.edges, key=lambda e: (rank[e[0]], rank[e[1]])):
        print(f"{a} -> {b}")
    return EXIT_OK


def cmd_advise(args) -> int:
    doc = _loaded_or_fail(args.file, args.json)
    if doc is None:
        return EXIT_ERRORS
    entries = advise_order(doc)
    if args.json:
        _print_json([e.to_dict() for e in entries])
        return EXIT_OK
    for e in entries:
        flag = "mandatory" if e.mandatory else "-"
        score = "-" if e.effective_score is None else str(e.effective_score)
        print(f"{e.rank}\t{e.task_id}\t{flag}\t{score}\t{e.text}")
    return EXIT_OK


def cmd_coverage(args) -> int:
    doc = _loaded_or_fail(args.file, args.json)
    if doc is None:
        return EXIT_ERRORS
    found = detect_blocks(doc)
    rows = [
        {"block": str(b), "name": BLOCK_NAMES[b], "present": bool(found[b]), "paths": found[b]}
        for b in BuildingBlock
    ]
    if args.json:
        _print_json(rows)
        return EXIT_OK
    for row in rows:
        mark = "✓" if row["present"] else "✗"
        where = ", ".join(row["paths"])
        print(f"{row['block']:<4}{mark} {row['name']:<34}{where}".rstrip())
    return EXIT_OK


def cmd_compare(args) -> int:
    doc = _loaded_or_fail(args.file, args.json)
    if doc is None:
        return EXIT_ERRORS
    report = {
        str(std): {kind: [str(b) for b in blocks] for kind, blocks in parts.items()}
        for std, parts in compare_report(doc).items()
    }
    if args.json:
        _print_json(report)
        return EXIT_OK
    for std, parts in report.items():
        print(std)
        for kind, blocks in parts.items():
            print(f"  {kind}: {', '.join(blocks) if blocks else '-'}")
    return EXIT_OK


def cmd_export(args) -> int:
    doc = _loaded_or_fail(args.file)
    if doc is None:
        return EXIT_ERRORS
    try:
        bundle = export(doc, args.format)
    except NNNError as exc:
        _emit_diagnostics([exc.diagnostic])
        return EXIT_ERRORS
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for artifact in bundle.artifacts:
            (out / artifact.filename).write_text(artifact.content, encoding="utf-8")
            print(out / artifact.filename)
        (out / "ledger.json").write_text(bundle.ledger.to_json(), encoding="utf-8")
        print(out / "ledger.json")
    except OSError as exc:
        raise _UsageError(f"cannot write to {out}: {exc.strerror or exc}") from None
    _emit_diagnostics(list(bundle.diagnostics))
    return EXIT_ERRORS if _has_errors(bundle.diagnostics) else EXIT_OK


def _find_input(doc: GuidelineDocument, args) -> InputSpec:
    if args.task is not None:
        kind, owner_id, cls = "task", args.task, AtomicTask
    elif args.outcome is not None:
        kind, owner_id, cls = "outcome", args.outcome, Outcome
    else:
        kind, owner_id, cls = "documentation", args.documentation, Documentation
    owners = [loc.node for loc in iter_guideline(doc) if isinstance(loc.node, cls) and loc.node.id == owner_id]
    if not owners:
        raise _UsageError(f"no {kind} with id {owner_id!r}")
    for spec in owners[0].inputs:
        if spec.label == args.input:
            return spec
    raise _UsageError(f"{kind} {owner_id!r} has no input labelled {args.input!r}")


def cmd_check_record(args) -> int:
    doc = _loaded_or_fail(args.file, args.json)
    if doc is None:
        return EXIT_ERRORS
    spec = _find_input(doc, args)
    if spec.pattern is None:
        raise _UsageError(f"input {spec.label!r} has no checkable pattern")
    record = args.record
    if not record.lstrip().startswith("<"):
        record = _read(record)
    try:
        report = validate_record(spec.pattern, record)
    except NNNError as exc:
        report = ValidationReport.of([exc.diagnostic])
    if args.json:
        _print_json({"ok": report.ok, "diagnostics": [d.to_dict() for d in report.diagnostics]})
    else:
        _emit_diagnostics(list(report.diagnostics))
        print("record conforms" if report.ok else "record does not conform")
    return EXIT_OK if report.ok else EXIT_ERRORS


def _index(directory: str, use_cache: bool):
    try:
        return build_index(directory, use_cache=use_cache)
    except NNNError as exc:
        raise _UsageError(exc.diagnostic.render()) from None


def _print_entries(entries, as_json: bool) -> None:
    if as_json:
        _print_json([e.to_dict() for e in entries])
        return
    for e in entries:
        print(f"{e.title}\t{e.version}\t{e.status}\t{e.path}")


def cmd_list(args) -> int:
    index, found = _index(args.dir, args.cache)
    _emit_diagnostics([d for d in found if d.severity == Severity.ERROR])
    _print_entries(index.entries, args.json)
    return EXIT_ERRORS if _has_errors(found) else EXIT_OK


def cmd_find(args) -> int:
    if args.label is None and args.title is None and args.block is None:
        raise _UsageError("find needs at least one of --label, --title, --block")
    index, found = _index(args.dir, args.cache)
    _emit_diagnostics([d for d in found if d.severity == Severity.ERROR])
    _print_entries(find(index, title=args.title, label=args.label, block=args.block), args.json)
    return EXIT_ERRORS if _has_errors(found) else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nnn", description="NANDA/NIC/NOC guideline documents")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="parse and check a document")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="report repairable deviations as errors")
    p.add_argument("--json", action="store_true")
    p.add_argument("--refs-warn", action="store_true", help="report dangling custom references as warnings")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("graph", help="task precedence graph")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.set_defaults(func=cmd_graph)

    for name, func, text in (
        ("advise", cmd_advise, "treatment listing order"),
        ("coverage", cmd_coverage, "building blocks present in a document"),
        ("compare", cmd_compare, "what each target standard can express"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("export", help="write an Arden, Asbru or GLIF skeleton")
    p.add_argument("file")
    p.add_argument("--format", required=True, choices=[str(s) for s in Standard])
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("check-record", help="check a documentation record against an input pattern")
    p.add_argument("file")
    owner = p.add_mutually_exclusive_group(required=True)
    owner.add_argument("--task", metavar="ID")
    owner.add_argument("--outcome", metavar="ID")
    owner.add_argument("--documentation", metavar="ID")
    p.add_argument("--input", required=True, metavar="LABEL")
    p.add_argument("record", help="record file, or inline XML starting with '<'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_record)

    p = sub.add_parser("list", help="index a directory of *.nnn.xml files")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache", action="store_true", help="read and refresh .nnn-index.json")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("find", help="search a directory of documents")
    p.add_argument("dir")
    p.add_argument("--label")
    p.add_argument("--title")
    p.add_argument("--block", choices=[str(b) for b in BuildingBlock])
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache", action="store_true", help="read and refresh .nnn-index.json")
    p.set_defaults(func=cmd_find)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"nnn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
