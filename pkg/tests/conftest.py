from pathlib import Path

import numpy as np
import pytest

from lpgradual import WeightedFramework, build_framework

DATA = Path(__file__).parent / "data"

FIG1_IDS = ["a0", "a1", "a2", "a3"]
FIG1_ATTACKS = [("a0", "a2"), ("a1", "a1"), ("a1", "a2"), ("a2", "a2"), ("a3", "a2")]
FIG1_W = np.array([0.43, 0.39, 0.92, 0.30])


@pytest.fixture
def fig1():
    return build_framework(FIG1_IDS, FIG1_ATTACKS)


@pytest.fixture
def fig1_wf(fig1):
    return WeightedFramework(fig1, FIG1_W)


@pytest.fixture
def fig1_path():
    return DATA / "fig1.json"


def random_instance(rng, max_n=8, p_attack=0.3, p_zero=0.2):
    """Random 0/1 framework (self-attacks allowed) and weights with forced zeros."""
    n = int(rng.integers(1, max_n + 1))
    ids = [f"a{i}" for i in range(n)]
    mask = rng.random((n, n)) < p_attack
    attacks = [(ids[j], ids[i]) for i in range(n) for j in range(n) if mask[i, j]]
    w = rng.random(n)
    w[rng.random(n) < p_zero] = 0.0
    return build_framework(ids, attacks), w


def random_corpus(size, seed, **kw):
    rng = np.random.default_rng(seed)
    return [random_instance(rng, **kw) for _ in range(size)]


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
