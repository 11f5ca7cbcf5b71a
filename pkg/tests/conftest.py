import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import RESULTS  # noqa: E402
from dimalg import corpus  # noqa: E402


@pytest.fixture
def rng():
    return corpus.make_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, line = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {line}")
