import itertools
import random

import pytest

from twogen import adversary as adv
from twogen.words import FiniteWord, GAMMA, LassoWord, Letter


@pytest.fixture(scope="session")
def builtins():
    return {name: adv.load(name) for name in adv.BUILTIN_NAMES}


def all_words(r):
    """Every GAMMA word of length exactly r."""
    for letters in itertools.product(GAMMA, repeat=r):
        yield FiniteWord(letters)


def random_gamma_lasso(rng: random.Random, max_stem=3, max_cycle=2):
    stem = tuple(
        rng.choice(GAMMA) for _ in range(rng.randint(0, max_stem))
    )
    cycle = tuple(
        rng.choice(GAMMA) for _ in range(rng.randint(1, max_cycle))
    )
    return LassoWord.of(stem, cycle)
