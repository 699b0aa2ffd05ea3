import random
from itertools import combinations

import pytest

from qap.capcore import Cap
from qap.gf2geom import Point


def random_cap(n: int, rng: random.Random, k_target: int | None = None) -> Cap:
    """A random cap built by greedy insertion over a random point order."""
    size = 1 << n
    if k_target is None:
        k_target = rng.randint(1, 9)
    order = rng.sample(range(size), size)
    chosen: list[int] = []
    excluded: set[int] = set()
    for x in order:
        if len(chosen) >= k_target:
            break
        if x in excluded:
            continue
        for a, b in combinations(chosen, 2):
            excluded.add(x ^ a ^ b)
        chosen.append(x)
        excluded.add(x)
    return Cap.from_bits(n, chosen)


# Hand-built representatives for every (k, dim, tag) combination; ambient
# dimensions chosen minimal-ish so every class actually occurs.
CLASS_REPRESENTATIVES = {
    ("IND", 1, 0): (4, [0]),
    ("IND", 2, 1): (4, [0, 1]),
    ("IND", 3, 2): (4, [0, 1, 2]),
    ("IND", 4, 3): (4, [0, 1, 2, 4]),
    ("IND", 5, 4): (4, [0, 1, 2, 4, 8]),
    ("IND", 6, 5): (6, [0, 1, 2, 4, 8, 16]),
    ("ODD5", 6, 4): (4, [0, 1, 2, 4, 8, 15]),
    ("IND", 7, 6): (6, [0, 1, 2, 4, 8, 16, 32]),
    ("ODD5", 7, 5): (6, [0, 1, 2, 4, 8, 16, 31]),
    ("IND", 8, 7): (8, [0, 1, 2, 4, 8, 16, 32, 64]),
    ("MULT1", 8, 6): (6, [0, 1, 2, 4, 8, 16, 32, 63]),
    ("MULT2", 8, 6): (6, [0, 1, 2, 4, 8, 16, 31, 32]),
    ("IND", 9, 8): (8, [0, 1, 2, 4, 8, 16, 32, 64, 128]),
    ("MULT1", 9, 7): (7, [0, 1, 2, 4, 8, 16, 32, 63, 64]),
    ("MULT2", 9, 7): (7, [0, 1, 2, 4, 8, 16, 31, 32, 64]),
    ("9DIM6", 9, 6): (6, [0, 1, 2, 4, 8, 15, 16, 32, 51]),
}


def representative(label: str, k: int, dim: int) -> Cap:
    n, bits = CLASS_REPRESENTATIVES[(label, k, dim)]
    return Cap.from_bits(n, bits)


def all_representatives():
    return {
        key: Cap.from_bits(n, bits)
        for key, (n, bits) in CLASS_REPRESENTATIVES.items()
    }


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, after the test summary."""
    try:
        from test_acceptance import ACCEPTANCE_RESULTS
    except ImportError:
        return
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
