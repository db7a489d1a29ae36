"""Named graph families used as test instances and by ``domhad gen``."""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np

from .graph import Graph, GraphError, subdivide


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, [[] for _ in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_multipartite(*sizes: int) -> Graph:
    label = [k for k, s in enumerate(sizes) for _ in range(s)]
    n = len(label)
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def octahedron() -> Graph:
    """Maximal planar graph on 6 vertices (12 edges)."""
    return complete_multipartite(2, 2, 2)


def subdivided_complete(n: int, times: int = 1) -> Graph:
    return subdivide(complete(n), times)


def from_networkx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), ((index[u], index[v]) for u, v in h.edges()))


def random_regular(n: int, d: int, seed: int) -> Graph:
    if n * d % 2:
        raise GraphError("n*d must be even for a d-regular graph")
    if d >= n:
        raise GraphError("need d < n")
    return from_networkx(nx.random_regular_graph(d, n, seed=seed))


def random_min_degree(n: int, min_deg: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) topped up with random edges until every degree is at least ``min_deg``."""
    if min_deg >= n:
        raise GraphError("min_deg must be below n")
    rows: list[set[int]] = [set() for _ in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u].add(v)
            rows[v].add(u)
    for v in range(n):
        while len(rows[v]) < min_deg:
            w = int(rng.integers(n))
            if w != v and w not in rows[v]:
                rows[v].add(w)
                rows[w].add(v)
    return Graph(n, rows)
