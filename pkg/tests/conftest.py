import os

import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_configure(config):
    # one cache per checkout, reused across runs so δ̃_6 is built once
    if "PARADELTA_CACHE" not in os.environ:
        os.environ["PARADELTA_CACHE"] = str(config.cache.mkdir("paradelta-deltas"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def cache():
    from paradelta.cache import default_cache

    return default_cache()
