import sys
from pathlib import Path

import pytest

from triad.serialize import algebra_from_json, loads

HERE = Path(__file__).parent
DATA = HERE / "data"
sys.path.insert(0, str(HERE))


def load(name: str):
    return algebra_from_json(loads((DATA / name).read_text()))


@pytest.fixture(scope="session")
def a3():
    return load("a3.json")


@pytest.fixture(scope="session")
def n4():
    return load("n4.json")


@pytest.fixture(scope="session")
def bad():
    return load("bad.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
