import random

import pytest

from abelscope.gamma import Gamma
from abelscope.liealg import build_abels4_algebra, build_paper_algebra

PRIMES = (2, 3, 5)


@pytest.fixture(scope="session")
def u9():
    return build_paper_algebra()


@pytest.fixture(scope="session")
def abels4():
    return build_abels4_algebra()


@pytest.fixture(params=PRIMES, ids=lambda p: f"p{p}")
def G(request):
    return Gamma(request.param)


@pytest.fixture
def rng():
    return random.Random(20091806)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for the terminal summary."""
    def report(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
