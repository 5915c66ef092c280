import itertools
import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from inducedpaths.graph import Graph

settings.register_profile(
    "repo", max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "deep", max_examples=1500, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


TRIANGLE = complete(3)


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if connected:
        order = draw(st.permutations(range(n)))
        chosen = set(chosen)
        for i in range(1, n):
            a, b = order[i], order[draw(st.integers(0, i - 1))]
            chosen.add((min(a, b), max(a, b)))
    return Graph(n, sorted(chosen))


@st.composite
def seeds(draw):
    return random.Random(draw(st.integers(0, 2**32 - 1)))


@pytest.fixture
def rng():
    return random.Random(12345)


def random_path(rng, g, start=None):
    """A random greedy plain path (extend at the head while possible)."""
    from inducedpaths.graph import PathWitness

    v = rng.randrange(g.n) if start is None else start
    path, seen = [v], {v}
    while True:
        free = sorted(set(g.neighbors(path[-1])) - seen)
        if not free:
            break
        w = rng.choice(free)
        path.append(w)
        seen.add(w)
    return PathWitness(tuple(path), False)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
