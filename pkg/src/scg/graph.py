"""Undirected simple graphs on vertices 1..n.

Adjacency is kept as one set per vertex; sets double as the O(1)
membership test and are sorted on demand wherever deterministic
iteration order matters.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import (
    EdgeAbsentError,
    GraphParseError,
    InvalidVertexError,
    SelfLoopError,
)

VertexSet = frozenset  # alias used in signatures; members are vertex ids


class Graph:
    """Mutable undirected simple graph with vertices 1..n."""

    __slots__ = ("n", "_adj", "m")

    def __init__(self, n: int):
        if n < 0:
            raise InvalidVertexError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n + 1)]
        self.m = 0

    # -- basic queries ----------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise InvalidVertexError(f"vertex {v} outside 1..{self.n}")

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def neighbors(self, v: int) -> list[int]:
        """Sorted open neighborhood N(v)."""
        self._check_vertex(v)
        return sorted(self._adj[v])

    def neighbor_set(self, v: int) -> set[int]:
        """Open neighborhood as a set (not to be mutated by callers)."""
        self._check_vertex(v)
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """N[v] = N(v) together with v itself."""
        self._check_vertex(v)
        return frozenset(self._adj[v]) | {v}

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in sorted order."""
        for u in range(1, self.n + 1):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def adjacency_masks(self) -> list[int]:
        """Open neighborhoods as bitmasks; bit (v-1) set iff v adjacent.

        Index 0 is unused so masks[v] matches vertex v.
        """
        masks = [0] * (self.n + 1)
        for v in range(1, self.n + 1):
            acc = 0
            for w in self._adj[v]:
                acc |= 1 << (w - 1)
            masks[v] = acc
        return masks

    # -- mutation ---------------------------------------------------------

    def add_edge(self, u: int, v: int) -> None:
        """Insert edge {u, v}; idempotent for already-present edges."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if v not in self._adj[u]:
            self._adj[u].add(v)
            self._adj[v].add(u)
            self.m += 1

    def remove_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self._adj[u]:
            raise EdgeAbsentError(f"edge {{{u},{v}}} not present")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self.m -= 1

    # -- derived graphs ---------------------------------------------------

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g._adj = [set(s) for s in self._adj]
        g.m = self.m
        return g

    def without_edge(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g.remove_edge(u, v)
        return g

    def with_edge(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g.add_edge(u, v)
        return g

    def induced_subgraph(self, s: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by vertex set ``s``.

        Returns (subgraph, mapping) where the subgraph lives on 1..|s| and
        mapping sends each new id back to the original vertex id.
        """
        members = sorted(set(s))
        for v in members:
            self._check_vertex(v)
        new_id = {v: i + 1 for i, v in enumerate(members)}
        sub = Graph(len(members))
        for v in members:
            for w in self._adj[v]:
                if w > v and w in new_id:
                    sub.add_edge(new_id[v], new_id[w])
        return sub, {i + 1: v for i, v in enumerate(members)}

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    return g.closed_neighborhood(v)


def aux_nodes(g: Graph, u: int, v: int) -> frozenset[int]:
    """Union of the closed neighborhoods of both endpoints of an edge."""
    return g.closed_neighborhood(u) | g.closed_neighborhood(v)


# -- text format -----------------------------------------------------------
#
# UTF-8 lines; '#'-prefixed lines are comments; blank lines are skipped.
# First data line: n.  Each following data line: "u v" (1-based).
# Duplicate edges are a parse error.


def parse_graph(text: str) -> Graph:
    g: Graph | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if g is None:
            if len(tokens) != 1:
                raise GraphParseError(f"line {lineno}: expected vertex count, got {raw!r}")
            try:
                n = int(tokens[0])
            except ValueError:
                raise GraphParseError(f"line {lineno}: vertex count not an integer: {raw!r}")
            if n < 0:
                raise GraphParseError(f"line {lineno}: vertex count must be >= 0")
            g = Graph(n)
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: endpoints not integers: {raw!r}")
        try:
            if g.has_edge(u, v):
                raise GraphParseError(f"line {lineno}: duplicate edge {{{u},{v}}}")
            g.add_edge(u, v)
        except (InvalidVertexError, SelfLoopError) as exc:
            raise GraphParseError(f"line {lineno}: {exc}")
    if g is None:
        raise GraphParseError("empty input: no vertex count line")
    return g


def format_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
