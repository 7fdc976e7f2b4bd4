import random

import pytest

from gridhfk.errors import GridInputError
from gridhfk.grids import GridDiagram, new_grid


def random_grid(n: int, rng: random.Random) -> GridDiagram:
    while True:
        xs = list(range(n))
        os_ = list(range(n))
        rng.shuffle(xs)
        rng.shuffle(os_)
        try:
            return new_grid(n, xs, os_)
        except GridInputError:
            continue


@pytest.fixture
def rng():
    return random.Random(20260809)
