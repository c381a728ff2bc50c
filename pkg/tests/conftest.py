from __future__ import annotations

from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def load(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


# acceptance criteria append (criterion, passed, detail) here; printed at the end of the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
