import sys

import pytest
from hypothesis import settings

from instanton_f2.knotdb import KnotRecord, default_table

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def fixtures(table):
    return table.fixture_knots()


@pytest.fixture
def genus3_lspace():
    """An L-space knot over F2 with g = 3, M = 8: the smallest |M| the genus bound allows."""
    return KnotRecord(
        "g3", r2=8, M=8, r0=5, nu_sharp=5, genus=3, lspace_f2=True, torsion_averse=True
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
