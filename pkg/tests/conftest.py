import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("NARAYANA_PROFILE", "quick") == "extended":
        return
    skip = pytest.mark.skip(reason="set NARAYANA_PROFILE=extended to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def na_word():
    from narayana.oracle import morphic_prefix

    return morphic_prefix(20_000)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
