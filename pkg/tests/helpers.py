"""Shared test fixtures: small graph builders and brute-force oracles.

The oracles deliberately use naive exhaustive scans so they stay independent
of the library's algorithms.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from adjfactor import Graph


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def er_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi graph over all node pairs."""
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    g = Graph.from_edges(edges, node_count=n)
    return g


def brute_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Exhaustive scan of every node triple."""
    out = []
    for a, b, c in combinations(range(g.node_count), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            out.append((a, b, c))
    return out


def brute_s_factor(g: Graph, u: int, v: int) -> int:
    """Count nodes adjacent to both endpoints by scanning every node."""
    return sum(1 for w in range(g.node_count) if w not in (u, v) and g.has_edge(w, u) and g.has_edge(w, v))


def brute_t_factor(g: Graph, tri: tuple[int, int, int]) -> int:
    """Count outside nodes adjacent to exactly two triangle vertices."""
    a, b, c = tri
    count = 0
    for w in range(g.node_count):
        if w in (a, b, c):
            continue
        hits = sum(1 for v in (a, b, c) if g.has_edge(w, v))
        if hits == 2:
            count += 1
    return count


def series_erfc(x: float) -> float:
    """erfc by Maclaurin summation of erf, run to convergence.

    Terms follow the recurrence t_n = t_{n-1} * (-x^2/n) * (2n-1)/(2n+1);
    accurate for |x| <= ~3 where the alternating series is well-conditioned.
    """
    term = x
    total = x
    n = 1
    while abs(term) > 1e-20 and n < 500:
        term *= -x * x / n * (2 * n - 1) / (2 * n + 1)
        total += term
        n += 1
    return 1.0 - 2.0 / math.sqrt(math.pi) * total
