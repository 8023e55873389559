import random

import pytest

from oiglab import gen_random, make_class


def figure_class():
    return make_class(["a", "b", "c"], [0, 1], ["000", "100", "010"])


def random_suite(count=200, seed=2024):
    """Random classes with |X| <= 4, |Y| <= 3, |H| <= 8 and n <= 4."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        X = rng.randint(1, 4)
        L = rng.randint(2, 3)
        m = rng.randint(1, min(8, L ** X))
        n = rng.randint(1, 4)
        out.append((gen_random(X, L, m, seed=rng.randrange(2 ** 31)), n))
    return out


@pytest.fixture
def fig():
    return figure_class()


@pytest.fixture(scope="session")
def suite():
    return random_suite()
