import random

import pytest

from progressive_er.model import GroundTruth, ProfileCollection
from progressive_er.synth import SynthConfig, synthesize

FIXTURE_VALUES = [["john smith"], ["john smith"], ["mary jones"], ["mary smith"]]


@pytest.fixture
def fixture4():
    return ProfileCollection.from_values(FIXTURE_VALUES)


@pytest.fixture
def fixture4_gt(fixture4):
    return GroundTruth.from_pairs(fixture4, [(0, 1), (2, 3)])


def random_instance(seed: int, max_n: int = 200):
    """Seeded synthetic instance with a small vocabulary so blocks overlap heavily."""
    rng = random.Random(seed)
    n = rng.randint(4, max_n)
    pairs = min(max(1, round(rng.uniform(0.1, 0.5) * n)), n // 2)
    cfg = SynthConfig(
        n=n,
        dup_rate=pairs / n,
        noise=rng.choice([0.0, 0.2, 0.4, 0.6]),
        seed=seed,
        clean_clean=rng.random() < 0.4,
        vocab_size=rng.choice([30, 80, 300]),
    )
    return synthesize(cfg)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
