import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
SUITE_BUDGET_SECONDS = 300

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}
_START = time.perf_counter()


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.perf_counter() - _START
    if ACCEPTANCE:
        if 9 in ACCEPTANCE:
            passed, detail = ACCEPTANCE[9]
            ACCEPTANCE[9] = (passed and elapsed < SUITE_BUDGET_SECONDS,
                             f"{detail}; suite wall-clock {elapsed:.1f} s "
                             f"(< {SUITE_BUDGET_SECONDS} s)")
        tr = terminalreporter
        tr.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            passed, detail = ACCEPTANCE[k]
            tr.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_sessionfinish(session, exitstatus):
    if ACCEPTANCE and time.perf_counter() - _START >= SUITE_BUDGET_SECONDS:
        session.exitstatus = 1
