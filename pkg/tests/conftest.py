import pytest

from slfusion.blocks import BlockCache
from slfusion.fusion import FusionTable, build_smatrix
from slfusion.lie_core import AlgebraCtx

_tables = {}
_smatrices = {}
_caches = {}

ACCEPTANCE_LINES = []


def table_for(r, level):
    key = (r, level)
    if key not in _tables:
        _tables[key] = FusionTable(AlgebraCtx(r, level))
    return _tables[key]


def smatrix_for(r, level):
    key = (r, level)
    if key not in _smatrices:
        _smatrices[key] = build_smatrix(AlgebraCtx(r, level))
    return _smatrices[key]


def cache_for(r, level):
    return _caches.setdefault((r, level), BlockCache())


@pytest.fixture
def tables():
    return table_for


@pytest.fixture
def smatrices():
    return smatrix_for


@pytest.fixture
def caches():
    return cache_for


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
