from __future__ import annotations

import json
import os
import shutil

import pytest

from conftest import CORPUS, FULL
from nnn.coverage import present_blocks
from nnn.diagnostics import NNNError
from nnn.store import CACHE_NAME, build_index, find


@pytest.fixture
def repo(tmp_path):
    shutil.copy(CORPUS, tmp_path / CORPUS.name)
    return tmp_path


def test_corpus_directory(repo, corpus_doc):
    index, diagnostics = build_index(repo)
    (entry,) = index.entries
    assert (entry.title, entry.version, entry.status) == ("fatigue", "1.0", "implementing")
    assert entry.nic_labels == ("Energy Management",)
    assert entry.noc_labels[0] == "Endurance"
    assert entry.blocks == present_blocks(corpus_doc)
    assert all(d.message.startswith("fatigue.nnn.xml: ") for d in diagnostics)


def test_empty_directory(tmp_path):
    index, diagnostics = build_index(tmp_path)
    assert index.entries == () and diagnostics == []


def test_other_files_are_ignored(repo):
    (repo / "notes.xml").write_text("<broken")
    assert len(build_index(repo)[0].entries) == 1


def test_malformed_file_reports_without_entry(repo):
    (repo / "bad.nnn.xml").write_text("<nnn><meta>")
    index, diagnostics = build_index(repo)
    assert [e.title for e in index.entries] == ["fatigue"]
    assert [d.code for d in diagnostics if d.code.startswith("E-")] == ["E-XML-MALFORMED"]


def test_sorted_by_title_case_insensitive(repo):
    shutil.copy(FULL, repo / FULL.name)
    text = FULL.read_text().replace('"impaired mobility"', '"Acute pain"')
    (repo / "pain.nnn.xml").write_text(text)
    titles = [e.title for e in build_index(repo)[0].entries]
    assert titles == ["Acute pain", "fatigue", "impaired mobility"]


class TestFind:
    def test_by_label(self, repo):
        index, _ = build_index(repo)
        assert [e.title for e in find(index, label="Energy Management")] == ["fatigue"]
        assert [e.title for e in find(index, label="Endurance")] == ["fatigue"]
        assert find(index, label="energy management") == []

    def test_by_title_ignores_case(self, repo):
        index, _ = build_index(repo)
        assert len(find(index, title="FATIGUE")) == 1
        assert find(index, title="fat") == []

    def test_by_block(self, repo):
        index, _ = build_index(repo)
        assert find(index, block="B5") == []
        assert len(find(index, block="B10")) == 1

    def test_criteria_combine(self, repo):
        index, _ = build_index(repo)
        assert find(index, title="fatigue", block="B6") == []


def test_rebuild_is_identical(repo):
    assert build_index(repo) == build_index(repo)


class TestCache:
    def test_round_trip(self, repo):
        fresh = build_index(repo, use_cache=True)
        data = json.loads((repo / CACHE_NAME).read_text())
        assert data["schema"] == 1 and data["entries"][0]["path"] == CORPUS.name
        assert build_index(repo, use_cache=True) == fresh

    def test_cache_is_used_when_fresh(self, repo):
        build_index(repo, use_cache=True)
        cache = repo / CACHE_NAME
        data = json.loads(cache.read_text())
        data["entries"][0]["title"] = "from cache"
        cache.write_text(json.dumps(data))
        assert build_index(repo, use_cache=True)[0].entries[0].title == "from cache"

    def test_stale_cache_is_rebuilt(self, repo):
        build_index(repo, use_cache=True)
        shutil.copy(FULL, repo / FULL.name)
        assert len(build_index(repo, use_cache=True)[0].entries) == 2

    def test_modified_file_invalidates(self, repo):
        build_index(repo, use_cache=True)
        target = repo / CORPUS.name
        target.write_text(target.read_text().replace('"fatigue"', '"tiredness"'))
        st = target.stat()
        os.utime(target, ns=(st.st_atime_ns, st.st_mtime_ns + 10**9))
        assert build_index(repo, use_cache=True)[0].entries[0].title == "tiredness"

    def test_deleted_file_invalidates(self, repo):
        build_index(repo, use_cache=True)
        (repo / CORPUS.name).unlink()
        assert build_index(repo, use_cache=True)[0].entries == ()

    def test_corrupt_cache_is_ignored(self, repo):
        (repo / CACHE_NAME).write_text("{not json")
        assert len(build_index(repo, use_cache=True)[0].entries) == 1


def test_missing_directory(tmp_path):
    with pytest.raises(NNNError) as err:
        build_index(tmp_path / "absent")
    assert err.value.code == "E-IO"
