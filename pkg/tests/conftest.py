"""Shared graph fixtures: named small graphs and seeded random instances."""

import random

import pytest

from plmc.multigraph import Multigraph


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, i + 1, 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Multigraph:
    return Multigraph(leaves + 1, [(0, i, 1) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, [(i, a + j, 1) for i in range(a) for j in range(b)])


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5, 1) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5, 1) for i in range(5)]
    spokes = [(i, 5 + i, 1) for i in range(5)]
    return Multigraph(10, outer + inner + spokes)


def prism_graph() -> Multigraph:
    """The 3-prism (circular ladder on 6 vertices, 3-regular)."""
    edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1),
             (0, 3, 1), (1, 4, 1), (2, 5, 1)]
    return Multigraph(6, edges)


def gnp_graph(n: int, p: float, seed: int) -> Multigraph:
    rng = random.Random(seed)
    edges = [(i, j, 1) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Multigraph(n, edges)


def random_multigraph(rng: random.Random, max_n: int = 10) -> Multigraph:
    n = rng.randint(2, max_n)
    edges = []
    for _ in range(rng.randint(1, 2 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        edges.append((u, v, rng.randint(1, 3)))
    return Multigraph(n, edges)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def petersen():
    return petersen_graph()
