"""Shared corpora for the test suite.

Enumeration fixtures stop at n=7 so the ordinary suite stays fast; the
acceptance tests build their own n=8 corpus (memoized in-process, so the
cost is paid once per pytest run).
"""

import random

import pytest

from spectral_cycles import Bipartition, Graph
from spectral_cycles.verify import (
    enumerate_connected,
    enumerate_connected_nonbipartite,
)


@pytest.fixture(scope="session")
def connected_upto7():
    return {n: enumerate_connected(n) for n in range(1, 8)}


@pytest.fixture(scope="session")
def connected_nonbipartite_upto7():
    return {n: enumerate_connected_nonbipartite(n) for n in range(3, 8)}


def dense_bipartite_pair(rng: random.Random, a: int = 40, b: int = 40,
                         delta_floor: float = (2 / 5 - 2 / 321) * 80):
    """One random bipartite graph on parts a/b with min degree > delta_floor.

    Rejection sampling; density is drawn high enough that rejection is rare.
    """
    while True:
        p = rng.uniform(0.88, 0.97)
        edges = [(u, a + v) for u in range(a) for v in range(b)
                 if rng.random() < p]
        g = Graph(a + b, edges)
        if g.min_degree() > delta_floor:
            bip = Bipartition(frozenset(range(a)),
                              frozenset(range(a, a + b)))
            return g, bip


@pytest.fixture(scope="session")
def dense_bipartite_small():
    rng = random.Random("dense-bipartite-tests")
    return [dense_bipartite_pair(rng) for _ in range(5)]
