import os
import tempfile

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

os.environ.setdefault("TIMMP_CACHE_DIR", tempfile.mkdtemp(prefix="timmp-cache-"))


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", help="run the n = 5 census checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test when the check fails."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"AC{number:02d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        _CRITERIA.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def census4():
    from timmp.census import generate_census

    return generate_census(4)


@pytest.fixture(scope="session")
def census4_records():
    from timmp.census import run_census

    return run_census(4, use_cache=False)
