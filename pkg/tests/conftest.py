from pathlib import Path

import pytest

from fuzzyhc import Dataset

from worked_example import LABELS, POINTS

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def corpus_dir():
    return FIXTURES / "corpus"


@pytest.fixture
def points_csv():
    return FIXTURES / "example_points.csv"


@pytest.fixture
def example_data():
    return Dataset(POINTS, LABELS)



_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(title): exit criterion reported in the summary")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    title = marker.args[0]
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    if failed or title not in _acceptance:
        _acceptance[title] = "FAIL" if failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for title, outcome in sorted(_acceptance.items(), key=lambda kv: int(kv[0].split()[0][2:])):
        terminalreporter.write_line(f"{outcome}  {title}")
