"""Shared fixtures and the acceptance-summary reporter.

tests/test_acceptance.py registers one line per acceptance criterion in
ACCEPTANCE_LINES; this hook prints them at the end of the run so each
criterion's pass/fail status is visible regardless of capture settings.
"""

import random

import pytest

from sparsewitness.gnp import SamplerConfig, sample_gnp

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def small_gnp(n: int, p: float, seed: int, stream: int = 0):
    return sample_gnp(SamplerConfig(n=n, p=p, seed=seed, stream=stream))
