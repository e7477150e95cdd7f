import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("pinned", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("pinned")


import pytest


@pytest.fixture
def samples():
    from importlib.resources import files
    return files("dsdim") / "samples"


@pytest.fixture
def ex511(samples):
    from dsdim.sysfile import parse_system
    return parse_system(str(samples / "ex511.sys"))


@pytest.fixture
def ex512(samples):
    from dsdim.sysfile import parse_system
    return parse_system(str(samples / "ex512.sys"))


def _table(system):
    from dsdim.dimpoly import LeaderTable
    from dsdim.linpoly import charset_linear_system
    cs = charset_linear_system(system.polys)
    return LeaderTable.from_charset(cs, len(system.indeterminates), system.partition)


@pytest.fixture
def ex511_table(ex511):
    return _table(ex511)


@pytest.fixture
def ex512_table(ex512):
    return _table(ex512)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
