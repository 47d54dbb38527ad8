"""Formalized NANDA/NIC/NOC nursing guideline documents.

Parse and write the XML format, validate structure and cross references,
check documentation records against embedded input patterns, derive task
precedence, rank treatments, and export lossy skeletons for Arden Syntax,
Asbru and GLIF.
"""

from nnn.advise import AdviceEntry, advise_order
from nnn.coverage import BuildingBlock, Standard, SupportLevel, compare_report, detect_blocks, support_level
from nnn.diagnostics import Diagnostic, NNNError, Severity, ValidationReport
from nnn.export import ExportBundle, LossLedger, export_arden, export_asbru, export_glif
from nnn.inputschema import compile_pattern, validate_record
from nnn.model import GuidelineDocument
from nnn.store import RepoIndex, build_index, find
from nnn.taskgraph import TaskGraph, compile_graph, is_valid_trace, topological_order, to_dot
from nnn.validate import effective_source, validate_document, validate_semantics, validate_structure
from nnn.xmlio import ParseMode, ParseResult, parse_document, serialize_document

__all__ = [
    "AdviceEntry",
    "BuildingBlock",
    "Diagnostic",
    "ExportBundle",
    "GuidelineDocument",
    "LossLedger",
    "NNNError",
    "ParseMode",
    "ParseResult",
    "RepoIndex",
    "Severity",
    "Standard",
    "SupportLevel",
    "TaskGraph",
    "ValidationReport",
    "advise_order",
    "build_index",
    "compare_report",
    "compile_graph",
    "compile_pattern",
    "detect_blocks",
    "effective_source",
    "export_arden",
    "export_asbru",
    "export_glif",
    "find",
    "is_valid_trace",
    "parse_document",
    "serialize_document",
    "support_level",
    "to_dot",
    "topological_order",
    "validate_document",
    "validate_record",
    "validate_semantics",
    "validate_structure",
]
