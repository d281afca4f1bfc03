import sys
from pathlib import Path

import pytest

from polarindex import CHEBYSHEV_COUNTEREXAMPLE
from polarindex.dataio import load_demo_chamber

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


@pytest.fixture
def three_groups():
    return CHEBYSHEV_COUNTEREXAMPLE


@pytest.fixture
def demo_chamber():
    return load_demo_chamber()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
