from __future__ import annotations

import pytest

from nnn.coverage import (
    BuildingBlock,
    Standard,
    SupportLevel,
    compare_report,
    detect_blocks,
    present_blocks,
    support_level,
)
from oracles import STANDARDS, SUPPORT_TABLE

_LEVEL = {"+": SupportLevel.SUPPORTED, "0": SupportLevel.WORKAROUND, "-": SupportLevel.NOT_SUPPORTED}


@pytest.mark.parametrize("block", sorted(SUPPORT_TABLE, key=lambda b: int(b[1:])))
@pytest.mark.parametrize("standard", STANDARDS)
def test_matrix_cell(standard, block):
    expected = _LEVEL[SUPPORT_TABLE[block][STANDARDS.index(standard)]]
    assert support_level(standard, block) == expected


def test_matrix_is_complete():
    assert len(BuildingBlock) == 11 and len(Standard) == 3


def test_corpus_blocks(corpus_doc):
    present = {str(b) for b in present_blocks(corpus_doc)}
    assert present == {"B1", "B2", "B3", "B4", "B7", "B8", "B9", "B10", "B11"}


def test_full_fixture_has_every_block(full_doc):
    assert present_blocks(full_doc) == set(BuildingBlock)


def test_detection_paths(full_doc):
    found = detect_blocks(full_doc)
    assert found[BuildingBlock.B5] == ["/guideline/factors/factor[3]"]
    assert "/guideline/factors/factor[2]/factors/factor[1]" in found[BuildingBlock.B4]
    assert "/meta/definition/hints/hint[1]" in found[BuildingBlock.B6]
    assert "/guideline" in found[BuildingBlock.B6]
    assert found[BuildingBlock.B10] == ["/guideline/tasks/labels/label[1]"]
    assert "/guideline/documentations/documentation[1]" in found[BuildingBlock.B9]


def test_compare_partitions_present_blocks(corpus_doc):
    present = present_blocks(corpus_doc)
    for std, parts in compare_report(corpus_doc).items():
        union = [b for blocks in parts.values() for b in blocks]
        assert sorted(union) == sorted(present) and len(union) == len(set(union))
    report = compare_report(corpus_doc)
    assert [str(b) for b in report[Standard.GLIF]["lost"]] == ["B4"]
    assert [str(b) for b in report[Standard.ARDEN]["via_workaround"]] == ["B8"]
