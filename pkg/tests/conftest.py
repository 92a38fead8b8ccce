import random

import pytest

from arbormatch import Graph, build_graph


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)]
    )
    return build_graph(10, edges)


def random_graph(rng: random.Random, n: int, density: float | None = None) -> Graph:
    """Erdos-Renyi-ish graph with a random density unless one is given."""
    prob = rng.random() if density is None else density
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < prob
    ]
    return build_graph(n, edges)


def naive_alpha_positions(edges: list[tuple[int, int]], alpha: float) -> set[int]:
    """Quadratic reference for the surviving-position oracle (1-indexed)."""
    out = set()
    for i, (u, v) in enumerate(edges):
        later = edges[i + 1 :]
        du = sum(1 for e in later if u in e)
        dv = sum(1 for e in later if v in e)
        if max(du, dv) <= alpha:
            out.add(i + 1)
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xA5B)
