from pathlib import Path

import pytest

from yinyang.trvb import parse_drawing

CORPUS = Path(__file__).resolve().parents[1] / "src" / "yinyang" / "data" / "corpus"

_LINES = []


def corpus_paths():
    return sorted(CORPUS.glob("*.drawing"))


def load(name):
    return parse_drawing((CORPUS / f"{name}.drawing").read_text())


@pytest.fixture
def report_line():
    """Collect a one-line verdict that is repeated in the terminal summary."""
    return _LINES.append


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
