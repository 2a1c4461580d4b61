import sys

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from geodiv.states import random_density, random_probability

# numerical checks are slow-ish and should not depend on the run
settings.register_profile("geodiv", deadline=None, derandomize=True)
settings.load_profile("geodiv")


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def probability_vectors(min_size=2, max_size=8, floor=1e-3):
    """Strictly positive probability vectors with every weight above ``floor``."""
    raw = st.integers(min_size, max_size).flatmap(
        lambda n: st.lists(st.floats(floor, 1.0), min_size=n, max_size=n)
    )
    return raw.map(lambda xs: np.asarray(xs) / np.sum(xs))


def probability_pairs(min_size=2, max_size=8, floor=1e-3):
    def pair(n):
        vec = st.lists(st.floats(floor, 1.0), min_size=n, max_size=n).map(lambda xs: np.asarray(xs) / np.sum(xs))
        return st.tuples(vec, vec)

    return st.integers(min_size, max_size).flatmap(pair)


seeds = st.integers(0, 2**32 - 1)


def density_from_seed(seed, dim, floor=1e-2):
    return random_density(dim, np.random.default_rng(seed), floor=floor)


def probability_from_seed(seed, n):
    return random_probability(n, np.random.default_rng(seed))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
