import random
from fractions import Fraction

import pytest
from hypothesis import settings

from tsurf import catalog
from tsurf.catalog import QSQRT2, QSQRT5

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CATALOG_NAMES = list(catalog.CATALOG)


@pytest.fixture(scope="session")
def nets():
    return {name: catalog.get(name) for name in CATALOG_NAMES}


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_sl2z(rng, steps=6):
    """Random product of elementary SL(2, Z) matrices."""
    M = ((1, 0), (0, 1))
    for _ in range(steps):
        k = rng.choice([-2, -1, 1, 2])
        E = ((1, k), (0, 1)) if rng.random() < 0.5 else ((1, 0), (k, 1))
        M = (
            (M[0][0] * E[0][0] + M[0][1] * E[1][0], M[0][0] * E[0][1] + M[0][1] * E[1][1]),
            (M[1][0] * E[0][0] + M[1][1] * E[1][0], M[1][0] * E[0][1] + M[1][1] * E[1][1]),
        )
    return M


def random_transitive_pair(rng, n):
    while True:
        h = list(range(n))
        v = list(range(n))
        rng.shuffle(h)
        rng.shuffle(v)
        seen, todo = {0}, [0]
        while todo:
            i = todo.pop()
            for j in (h[i], v[i]):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        if len(seen) == n:
            return h, v


def small_fraction(rng, span=5, den=4):
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))
