"""Building-block detection and the CIG standard support matrix."""

from __future__ import annotations

from nnn.diagnostics import StrEnum
from nnn.model import (
    AtomicTask,
    Documentation,
    Factor,
    FactorType,
    GuidelineDocument,
    Hint,
    InputSpec,
    Outcome,
    Symptom,
    iter_guideline,
    iter_meta,
)


class BuildingBlock(StrEnum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"
    B8 = "B8"
    B9 = "B9"
    B10 = "B10"
    B11 = "B11"

    @property
    def display_name(self) -> str:
        return BLOCK_NAMES[self]


BLOCK_NAMES: dict[BuildingBlock, str] = {
    BuildingBlock.B1: "title",
    BuildingBlock.B2: "description",
    BuildingBlock.B3: "defining characteristics",
    BuildingBlock.B4: "related factors",
    BuildingBlock.B5: "risk factors",
    BuildingBlock.B6: "sources",
    BuildingBlock.B7: "nursing interventions",
    BuildingBlock.B8: "nursing outcomes",
    BuildingBlock.B9: "emphases of nursing documentation",
    BuildingBlock.B10: "NIC labels",
    BuildingBlock.B11: "NOC labels",
}


class SupportLevel(StrEnum):
    SUPPORTED = "supported"
    NOT_SUPPORTED = "not_supported"
    WORKAROUND = "workaround"


class Standard(StrEnum):
    ARDEN = "arden"
    ASBRU = "asbru"
    GLIF = "glif"


_SYMBOL = {"+": SupportLevel.SUPPORTED, "-": SupportLevel.NOT_SUPPORTED, "0": SupportLevel.WORKAROUND}

# One symbol per block B1..B11.
_ROWS = {
    Standard.ARDEN: "+ + + - - + + 0 + - -",
    Standard.ASBRU: "+ - 0 - - + + + + - +",
    Standard.GLIF: "+ + + - - + + + + 0 0",
}

SUPPORT_MATRIX: dict[tuple[Standard, BuildingBlock], SupportLevel] = {
    (std, block): _SYMBOL[sym]
    for std, row in _ROWS.items()
    for block, sym in zip(BuildingBlock, row.split(), strict=True)
}


def support_level(standard: Standard | str, block: BuildingBlock | str) -> SupportLevel:
    return SUPPORT_MATRIX[(Standard(standard), BuildingBlock(block))]


def detect_blocks(doc: GuidelineDocument) -> dict[BuildingBlock, list[str]]:
    """Document paths realizing each building block (empty list if none)."""
    found: dict[BuildingBlock, list[str]] = {b: [] for b in BuildingBlock}
    found[BuildingBlock.B1].append("/meta/title")
    found[BuildingBlock.B2].append("/meta/definition")
    for loc in list(iter_meta(doc)) + list(iter_guideline(doc)):
        node, path = loc.node, loc.path
        if loc.source is not None:
            found[BuildingBlock.B6].append(path)
        if isinstance(node, Hint):
            if node.from_ is not None:
                found[BuildingBlock.B6].append(path)
        elif isinstance(node, Symptom):
            found[BuildingBlock.B3].append(path)
        elif isinstance(node, Factor):
            block = BuildingBlock.B5 if node.factor_type == FactorType.RISK else BuildingBlock.B4
            found[block].append(path)
        elif isinstance(node, AtomicTask):
            found[BuildingBlock.B7].append(path)
        elif isinstance(node, Outcome):
            found[BuildingBlock.B8].append(path)
        elif isinstance(node, (Documentation, InputSpec)):
            found[BuildingBlock.B9].append(path)
        elif path.startswith("/guideline/tasks/labels/label["):
            found[BuildingBlock.B10].append(path)
        elif path.startswith("/guideline/outcomes/labels/label["):
            found[BuildingBlock.B11].append(path)
    return found


def present_blocks(doc: GuidelineDocument) -> set[BuildingBlock]:
    return {b for b, paths in detect_blocks(doc).items() if paths}


def compare_report(doc: GuidelineDocument) -> dict[Standard, dict[str, list[BuildingBlock]]]:
    """Per standard: detected blocks split into expressible / via_workaround / lost."""
    present = sorted(present_blocks(doc), key=list(BuildingBlock).index)
    bucket = {
        SupportLevel.SUPPORTED: "expressible",
        SupportLevel.WORKAROUND: "via_workaround",
        SupportLevel.NOT_SUPPORTED: "lost",
    }
    report: dict[Standard, dict[str, list[BuildingBlock]]] = {}
    for std in Standard:
        parts: dict[str, list[BuildingBlock]] = {"expressible": [], "via_workaround": [], "lost": []}
        for block in present:
            parts[bucket[support_level(std, block)]].append(block)
        report[std] = parts
    return report
