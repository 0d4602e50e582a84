import pytest

from irrbase.corpus import default_corpus, run_stats

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def corpus_reports():
    """Reports for every shipped corpus group, computed once per session."""
    return [(spec, run_stats(spec)) for spec in default_corpus()]


@pytest.fixture
def record():
    """Store the one-line verdict for an acceptance criterion."""

    def _record(number: int, passed: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
