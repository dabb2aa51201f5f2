from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from knotflock.classification import load_catalog
from knotflock.fileio import read_cochain, read_flock, read_group

DATA = Path(str(resources.files("knotflock") / "data"))

#: criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def paper_group():
    return read_group(DATA / "paper12.perms")


@pytest.fixture(scope="session")
def paper_flock():
    return read_flock(DATA / "paper12.flock")


@pytest.fixture(scope="session")
def phi():
    return read_cochain(DATA / "phi.cocycle")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(validate=False)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        results = ACCEPTANCE[crit]
        ok = all(r for r, _ in results)
        failed = [d for r, d in results if not r]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({sum(r for r, _ in results)}/{len(results)} checks)"
        if failed:
            line += " failing: " + "; ".join(failed)
        terminalreporter.write_line(line)
