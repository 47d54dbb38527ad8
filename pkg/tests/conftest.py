from __future__ import annotations

from pathlib import Path

import pytest

from nnn.xmlio import ParseMode, parse_document

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    passed = report.passed and _ACCEPTANCE.get(number, ("", True))[1]
    _ACCEPTANCE[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number}. {title}")

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "fatigue.nnn.xml"
FULL = FIXTURES / "full.nnn.xml"


@pytest.fixture(scope="session")
def corpus_text() -> str:
    return CORPUS.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def full_text() -> str:
    return FULL.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_doc(corpus_text):
    return parse_document(corpus_text, ParseMode.LENIENT).document


@pytest.fixture(scope="session")
def full_doc(full_text):
    result = parse_document(full_text, ParseMode.STRICT)
    assert result.diagnostics == ()
    return result.document
