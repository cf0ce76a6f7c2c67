from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(Path(__file__).resolve().parent))

CRITERIA = {
    1: "golden trace of the unadvised running example",
    2: "A1_out denies the local copy",
    3: "A2_read denies the read by predicting the continuation",
    4: "DAC suite",
    5: "MAC suite and the B2 variant",
    6: "RBAC suite matches DAC verdicts",
    7: "refinement suites (confidentiality, wards)",
    8: "remote-evaluation suite and newloc bypass",
    9: "secondary-use suite",
    10: "property suites",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion backed by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"AC{n:<2} {status:<7} {label} ({len(results or [])} checks)")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
