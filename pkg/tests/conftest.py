from __future__ import annotations

import random

import pytest

from corpus import ACCEPTANCE_LINES
from kmerco.countbf import CountBF, plan_dimensions


def random_kmer(rng: random.Random, k: int, alphabet: bytes = b"ACGT") -> bytes:
    return bytes(rng.choices(alphabet, k=k))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240101)


@pytest.fixture
def small_filter() -> CountBF:
    return CountBF(plan_dimensions(1000, 0.001, 8, 2, seed=7))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
