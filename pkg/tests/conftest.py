import random
import re

import pytest

from permquot.perm import Permutation

_criteria: dict[str, str] = {}


def random_perm(n: int, rng: random.Random) -> Permutation:
    imgs = list(range(1, n + 1))
    rng.shuffle(imgs)
    return Permutation(imgs)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m and report.when == "call":
        _criteria[m.group(1)] = "PASS" if report.passed else "FAIL"
    elif m and report.when == "setup" and report.failed:
        _criteria[m.group(1)] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria, key=int):
        terminalreporter.write_line(f"criterion {k}: {_criteria[k]}")
