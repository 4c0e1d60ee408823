"""Test-data generators: random trees and random strongly chordal graphs."""

from __future__ import annotations

import random

from . import oracle
from .dynamic import flip_creates_delta
from .graph import Graph
from .recognition import build_matrix, strong_elimination_ordering

# Graphs up to this size use the exhaustive oracle to vet candidate
# edges; larger ones fall back to the (conservative) matrix query.
ORACLE_ACCEPT_LIMIT = 9


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labeled tree from a random Pruefer sequence."""
    g = Graph(n)
    if n <= 1:
        return g
    if n == 2:
        g.add_edge(1, 2)
        return g
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    import heapq

    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        g.add_edge(leaf, x)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    g.add_edge(heapq.heappop(leaves), heapq.heappop(leaves))
    return g


def random_strongly_chordal(n: int, density: float, seed: int) -> Graph:
    """Random strongly chordal graph: a random tree densified by edge
    insertions that are individually vetted to stay inside the class.

    Small graphs vet candidates with the exhaustive oracle; larger ones
    use the matrix query under a fixed strong elimination ordering
    (sound, possibly conservative).  Deterministic for a fixed seed;
    stops at the density target or when the retry budget runs out.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be within [0, 1]")
    rng = random.Random(seed)
    g = random_tree(n, rng)
    if n <= 2:
        return g
    target = max(n - 1, round(density * n * (n - 1) / 2))
    budget = 30 * n + 300

    use_oracle = n <= ORACLE_ACCEPT_LIMIT
    if not use_oracle:
        ordering = strong_elimination_ordering(g)
        bits = build_matrix(g, ordering).bits

    while g.m < target and budget > 0:
        budget -= 1
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u == v:
            continue
        if g.has_edge(u, v):
            continue
        if use_oracle:
            if oracle.is_strongly_chordal(g.with_edge(u, v)):
                g.add_edge(u, v)
        else:
            p = ordering.position(u) - 1
            q = ordering.position(v) - 1
            if not flip_creates_delta(bits, p, q):
                g.add_edge(u, v)
                bits[p, q] = True
                bits[q, p] = True
    return g
