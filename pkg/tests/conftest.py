import numpy as np
import pytest
from hypothesis import settings

from splab.families import FamilySpec

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def power_r1():
    """Power family a_nu = nu**-(alpha + 1/p), alpha = 0.5, p = 2, cutoff 1e5."""
    return FamilySpec("power", d=1, beta=1.0).spectrum(2.0, 10**5)


@pytest.fixture(scope="session")
def power_r2():
    return FamilySpec("power", d=1, beta=2.0).spectrum(2.0, 10**5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
