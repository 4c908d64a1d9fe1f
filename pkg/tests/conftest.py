from pathlib import Path

import pytest

from jostzeta.jost import Barrier, find_zeros

DATA = Path(__file__).parent / "data"

_acceptance_lines = []


def record_acceptance(number, title, passed, detail=""):
    _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} -- {detail}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def barrier():
    return Barrier(2.0)


@pytest.fixture(scope="session")
def zeros_1e4(barrier):
    return find_zeros(10_000, barrier)


@pytest.fixture(scope="session")
def data_dir():
    return DATA
