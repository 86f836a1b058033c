from functools import lru_cache

import pytest

from steinberg_gg import build_instance

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def cached_instance(group, n, q, ell, m=None, gamma_exponent=1):
    return build_instance(group, n, q, ell, m, gamma_exponent)


@pytest.fixture
def inst():
    return cached_instance


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
