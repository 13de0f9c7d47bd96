from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from transeq.words import CyclicWord, Word

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE_LINES: dict[int, str] = {}


def _reduce(letters: list[str]) -> str:
    out: list[str] = []
    for c in letters:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def words(max_size: int = 16) -> st.SearchStrategy[Word]:
    return st.lists(st.sampled_from("xXyY"), max_size=max_size).map(lambda ls: Word(_reduce(ls)))


def raw_text(max_size: int = 16) -> st.SearchStrategy[str]:
    return st.text(alphabet="xXyY", max_size=max_size)


def cyclic_words(max_size: int = 16) -> st.SearchStrategy[CyclicWord]:
    def core(w: Word) -> CyclicWord:
        t = w.text
        while len(t) > 1 and t[0] == t[-1].swapcase():
            t = t[1:-1]
        return CyclicWord(t)

    return words(max_size).map(core)


@pytest.fixture(scope="session")
def derived():
    entries = json.loads((FIXTURES / "derived.json").read_text())
    return {e["id"]: e for e in entries}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
