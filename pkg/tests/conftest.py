"""Shared fixtures and the acceptance summary printed after the run."""
from __future__ import annotations

import pytest

from sphtiling import catalog

_RESULTS_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS_KEY] = {}


@pytest.fixture
def acceptance(request):
    """Record ``(ok, detail)`` for a numbered criterion."""
    store = request.config.stash[_RESULTS_KEY]

    def record(n: int, ok: bool, detail: str) -> None:
        store[n] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS_KEY, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        ok, detail = store[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def ico_protoset():
    return catalog.icosahedral_protoset()


@pytest.fixture(scope="session")
def flip_protoset():
    return catalog.sporadic("20,24.2")
