"""Semi-dynamic edge deletion and insertion on strongly chordal graphs.

A deletion is allowed when the edge sits in exactly one maximal clique
(so chordality survives) and is not the only strong chord of any
6-cycle, checked over interior-disjoint pairs of length-3 paths between
its endpoints.  An insertion is allowed when flipping the corresponding
symmetric pair of matrix entries creates no delta pattern, checked by a
localized scan around the flipped cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clique_tree import CliqueTree, build_clique_tree, update_after_deletion
from .errors import (
    EdgeAbsentError,
    InvariantError,
    NotStronglyChordalError,
    SelfLoopError,
)
from .graph import Graph
from .recognition import (
    NeighborhoodMatrix,
    Ordering,
    build_matrix,
    find_delta,
    strong_elimination_ordering,
    verify_delta_free,
)

REASON_EDGE_ABSENT = "EdgeAbsent"
REASON_BREAKS_CHORDALITY = "BreaksChordality"
REASON_ONLY_STRONG_CHORD = "OnlyStrongChord"
REASON_EDGE_EXISTS = "EdgeExists"
REASON_CREATES_DELTA = "CreatesDelta"


@dataclass(frozen=True)
class P4Path:
    """A path u-x-y-v on four distinct vertices."""

    u: int
    x: int
    y: int
    v: int

    @property
    def interior(self) -> frozenset[int]:
        return frozenset((self.x, self.y))


@dataclass(frozen=True)
class OpOutcome:
    accepted: bool
    reason: str | None = None


def enumerate_p4(g: Graph, u: int, v: int) -> list[P4Path]:
    """All length-3 paths u-x-y-v with four distinct vertices.

    Interiors necessarily lie in N(u) | N(v), so scanning the two
    neighborhoods covers the same ground as a depth-3 search of the
    subgraph induced by N[u] | N[v].  Sorted by (x, y).  The count is
    bounded by deg(u) * deg(v).
    """
    if not g.has_edge(u, v):
        raise EdgeAbsentError(f"edge {{{u},{v}}} not present")
    paths = []
    nv = g.neighbor_set(v)
    for x in g.neighbors(u):
        if x == v:
            continue
        for y in g.neighbors(x):
            if y == u or y == v:
                continue
            if y in nv:
                paths.append(P4Path(u, x, y, v))
    return paths


# -- localized matrix scans ----------------------------------------------------


def flip_creates_delta(bits: np.ndarray, p: int, q: int) -> bool:
    """Would setting entries (p, q) and (q, p) to 1 create a delta
    pattern?  0-based positions; bits must currently be delta-free.

    Any new pattern must use a flipped cell as one of its three 1s, so
    each flipped cell is tested in each 1-role (top-left, top-right,
    bottom-left of the 2x2).
    """
    m = bits.copy()
    m[p, q] = True
    m[q, p] = True
    return _cell_in_delta(m, p, q) or _cell_in_delta(m, q, p)


def _cell_in_delta(m: np.ndarray, a: int, b: int) -> bool:
    # as top-left (rows below carry the 1 at column b, columns right the
    # 1 at row a, and the crossing holds the 0)
    rows = m[a + 1 :, b]
    cols = m[a, b + 1 :]
    if rows.any() and cols.any():
        if (~m[a + 1 :, b + 1 :] & rows[:, None] & cols[None, :]).any():
            return True
    # as top-right (the 0 sits below at (k, b))
    cols = m[a, :b]
    if cols.any():
        if ((m[a + 1 :, :b] & cols[None, :]) & ~m[a + 1 :, b][:, None]).any():
            return True
    # as bottom-left (the 0 sits right at (a, l))
    rows = m[:a, b]
    if rows.any():
        if ((m[:a, b + 1 :] & rows[:, None]) & ~m[a, b + 1 :][None, :]).any():
            return True
    return False


def clear_creates_delta(bits: np.ndarray, p: int, q: int) -> bool:
    """After entries (p, q), (q, p) were cleared, does a delta pattern
    now exist?  A fresh pattern can only have its single 0 at a cleared
    cell; its three 1s predate the clearing."""
    for a, b in ((p, q), (q, p)):
        rows = bits[:a, b]
        cols = bits[a, :b]
        if rows.any() and cols.any():
            if (bits[:a, :b] & rows[:, None] & cols[None, :]).any():
                return True
    return False


# -- session state --------------------------------------------------------------


class SessionState:
    """A strongly chordal graph with its clique tree, strong elimination
    ordering, and neighborhood matrix kept coherent across operations."""

    def __init__(self, graph: Graph, tree: CliqueTree, ordering: Ordering, matrix: NeighborhoodMatrix):
        self.graph = graph
        self.tree = tree
        self.ordering = ordering
        self.matrix = matrix

    @classmethod
    def from_graph(cls, g: Graph, ordering: Ordering | None = None) -> "SessionState":
        """Initialize from a strongly chordal graph.

        With an explicit ordering, its matrix is verified delta-free;
        otherwise a strong elimination ordering is computed.
        """
        tree = build_clique_tree(g)
        if ordering is None:
            ordering = strong_elimination_ordering(g)
            matrix = build_matrix(g, ordering)
        else:
            matrix = build_matrix(g, ordering)
            verify_delta_free(matrix)
        return cls(g, tree, ordering, matrix)

    # -- queries (read-only) --------------------------------------------------

    def delete_reason(self, u: int, v: int) -> str | None:
        g = self.graph
        if u == v:
            return REASON_EDGE_ABSENT
        if not g.has_edge(u, v):
            return REASON_EDGE_ABSENT
        if self.tree.count_nodes_containing_edge(u, v) != 1:
            return REASON_BREAKS_CHORDALITY
        paths = enumerate_p4(g, u, v)
        for i, p in enumerate(paths):
            pi = p.interior
            for q in paths[i + 1 :]:
                if pi & q.interior:
                    continue
                # the 6-cycle u-p.x-p.y-v-q.y-q.x-u: its other two
                # distance-3 chords are {p.x, q.y} and {p.y, q.x}
                if not (g.has_edge(p.x, q.y) or g.has_edge(p.y, q.x)):
                    return REASON_ONLY_STRONG_CHORD
        return None

    def insert_reason(self, u: int, v: int) -> str | None:
        if u == v:
            raise SelfLoopError(f"cannot insert a self-loop at {u}")
        if self.graph.has_edge(u, v):
            return REASON_EDGE_EXISTS
        p = self.ordering.position(u) - 1
        q = self.ordering.position(v) - 1
        if flip_creates_delta(self.matrix.bits, p, q):
            return REASON_CREATES_DELTA
        return None

    def delete_query(self, u: int, v: int) -> bool:
        return self.delete_reason(u, v) is None

    def insert_query(self, u: int, v: int) -> bool:
        return self.insert_reason(u, v) is None

    # -- mutations --------------------------------------------------------------

    def delete(self, u: int, v: int) -> OpOutcome:
        reason = self.delete_reason(u, v)
        if reason is not None:
            return OpOutcome(False, reason)
        update_after_deletion(self.tree, self.graph, u, v)
        self.graph.remove_edge(u, v)
        p = self.ordering.position(u) - 1
        q = self.ordering.position(v) - 1
        self.matrix.bits[p, q] = False
        self.matrix.bits[q, p] = False
        if clear_creates_delta(self.matrix.bits, p, q):
            # the old ordering is no longer strong for the smaller
            # graph; recompute (the graph itself stays in the class)
            try:
                self.ordering = strong_elimination_ordering(self.graph)
            except NotStronglyChordalError as exc:
                raise InvariantError(
                    f"accepted deletion left the class: {exc}"
                ) from exc
            self.matrix = build_matrix(self.graph, self.ordering)
        return OpOutcome(True)

    def insert(self, u: int, v: int) -> OpOutcome:
        reason = self.insert_reason(u, v)
        if reason is not None:
            return OpOutcome(False, reason)
        self.graph.add_edge(u, v)
        p = self.ordering.position(u) - 1
        q = self.ordering.position(v) - 1
        self.matrix.set_entry(p + 1, q + 1, True)
        self.tree = build_clique_tree(self.graph, start_id=self.tree._next_id)
        return OpOutcome(True)

    def reinsert_with_reordering(self, u: int, v: int) -> OpOutcome:
        """Retry a rejected insertion under a freshly computed ordering
        of the would-be graph; exact, so only orderings block it."""
        if self.graph.has_edge(u, v):
            return OpOutcome(False, REASON_EDGE_EXISTS)
        candidate = self.graph.with_edge(u, v)
        try:
            ordering = strong_elimination_ordering(candidate)
        except NotStronglyChordalError:
            return OpOutcome(False, REASON_CREATES_DELTA)
        self.graph = candidate
        self.ordering = ordering
        self.matrix = build_matrix(candidate, ordering)
        self.tree = build_clique_tree(candidate, start_id=self.tree._next_id)
        return OpOutcome(True)

    # -- invariants ---------------------------------------------------------------

    def check_coherence(self) -> None:
        rebuilt = build_matrix(self.graph, self.ordering)
        if not np.array_equal(rebuilt.bits, self.matrix.bits):
            raise InvariantError("matrix out of sync with graph and ordering")
        if find_delta(self.matrix) is not None:
            raise InvariantError("session matrix holds a delta pattern")
        self.tree.validate(self.graph)


# -- module-level operation wrappers -----------------------------------------


def delete_query(s: SessionState, u: int, v: int) -> bool:
    return s.delete_query(u, v)


def insert_query(s: SessionState, u: int, v: int) -> bool:
    return s.insert_query(u, v)


def delete(s: SessionState, u: int, v: int) -> OpOutcome:
    return s.delete(u, v)


def insert(s: SessionState, u: int, v: int) -> OpOutcome:
    return s.insert(u, v)
