import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from bhkmld import certify, parse_potential

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
DEG22 = "x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"
DEG22_ROWS = ((2, 0, 0, 0), (0, 3, 0, 1), (0, 1, 5, 0), (0, 0, 1, 19))

SLOW = os.environ.get("BHKMLD_SLOW") == "1"

# criterion id -> (description, outcome); filled by test_acceptance
ACCEPTANCE: dict[str, list] = {}


@pytest.fixture
def deg22():
    return certify(parse_potential(DEG22, 4))


def representable(value: Fraction, aT, dT) -> bool:
    """True iff ``value`` is a nonnegative integer combination of ``aT / dT``."""
    target = value * dT
    if target.denominator != 1:
        return False
    target = int(target)
    reach = [False] * (target + 1)
    reach[0] = True
    for w in sorted(set(aT)):
        for t in range(w, target + 1):
            reach[t] = reach[t] or reach[t - w]
    return reach[target]


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="set BHKMLD_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key, desc = marker.args
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        ACCEPTANCE[key] = [desc, status]
    elif report.failed:
        ACCEPTANCE[key] = [desc, "FAIL"]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("abcdefghijklmnopqrstuvwxyz")), k)):
        desc, outcome = ACCEPTANCE[key]
        terminalreporter.write_line(f"{outcome:<4} criterion {key}: {desc}")
