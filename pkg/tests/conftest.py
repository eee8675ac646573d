import random
from fractions import Fraction

import pytest


@pytest.fixture
def rng():
    return random.Random(20260810)


def random_rational(rng, bound=10_000):
    num = rng.randint(-bound, bound)
    while num == 0:
        num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)
