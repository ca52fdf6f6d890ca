from functools import lru_cache

import pytest
from hypothesis import strategies as st

from semidual.catalog import catalog, catalog_names
from semidual.census import enumerate_semigroups


@lru_cache(maxsize=None)
def small_semigroups(max_order=3):
    """Every labeled semigroup of order at most max_order."""
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_semigroups(n))
    return tuple(out)


@lru_cache(maxsize=None)
def iso_classes(n):
    return tuple(enumerate_semigroups(n, "iso"))


def catalog_semigroups():
    return [(name, catalog(name).semigroup) for name in catalog_names()]


semigroups = st.sampled_from(small_semigroups(3)) | st.sampled_from(
    [s for _, s in catalog_semigroups()])


@pytest.fixture(scope="session")
def cat():
    return {name: s for name, s in catalog_semigroups()}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
