"""Shared fixtures plus a per-criterion summary for the acceptance tests."""

import re

import numpy as np
import pytest

from entroqsl.sampling import random_bloch, random_full_rank_state

ACCEPTANCE_LABELS = {
    1: "matrix log: resolvent integral vs spectral route",
    2: "qubit relative entropy closed form vs matrix route",
    3: "entropy production rate identity",
    4: "divergence bracketed by trace-norm and integral bounds",
    5: "speed-limit validity and bracket hierarchy on grids",
    6: "depolarizing closed forms vs numerical pipeline",
    7: "channel geometry and speed closed forms vs oracles",
    8: "unitary drive speed-limit behavior",
    9: "gad inversion symmetry",
    10: "CSV grid orderings",
    11: "triangle inequality and contractivity",
}

_CRITERION_PATTERN = re.compile(r"test_criterion_(\d+)")


@pytest.fixture
def rng():
    return np.random.default_rng(20260821)


@pytest.fixture
def bloch_pair(rng):
    return random_bloch(rng), random_bloch(rng)


@pytest.fixture
def full_rank_pair(rng):
    dim = int(rng.integers(2, 5))
    return random_full_rank_state(rng, dim), random_full_rank_state(rng, dim)


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _CRITERION_PATTERN.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    store = _acceptance_results.setdefault(number, [])
    store.append(report.outcome)


_acceptance_results = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LABELS):
        outcomes = _acceptance_results.get(number)
        if outcomes is None:
            status = "SKIP"
        elif all(outcome == "passed" for outcome in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(
            "[%s] criterion %2d: %s" % (status, number, ACCEPTANCE_LABELS[number])
        )
