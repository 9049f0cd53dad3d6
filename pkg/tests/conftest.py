import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rand_pos(rng: random.Random, top: int = 9) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, top))


@pytest.fixture
def rng():
    return random.Random(20261016)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
