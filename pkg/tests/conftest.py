from __future__ import annotations

import pytest

from ydhopf.exactmath import IOTA, ONE
from ydhopf.proofreplay import Workspace

ZETA_VALUES = {"1": ONE, "-1": -ONE, "i": IOTA, "-i": -IOTA}


@pytest.fixture(scope="session")
def ws() -> Workspace:
    return Workspace()


@pytest.fixture(scope="session")
def b_iota(ws):
    return ws.biproduct(IOTA)


@pytest.fixture(scope="session")
def b_one(ws):
    return ws.biproduct(ONE)


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.rsplit("::", 1)[1]
        number = int(name.split("_")[2])
        title = name.split("_", 3)[3].replace("_", " ")
        outcome = "PASS" if report.outcome == "passed" else "FAIL"
        if _ACCEPTANCE.get(number, ("", "PASS"))[1] == "PASS":
            _ACCEPTANCE[number] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")
