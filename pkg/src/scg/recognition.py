"""Recognition machinery: MCS, elimination orderings, neighborhood matrices.

The blocking 2x2 submatrix [[1,1],[1,0]] (rows i<k, columns j<l) is
referred to as the delta pattern throughout; an ordering is a strong
elimination ordering exactly when its neighborhood matrix avoids it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotStronglyChordalError, SCGError
from .graph import Graph

# Above this size, delta-freeness verification of freshly computed
# orderings switches from exhaustive to sampled row pairs.
EXHAUSTIVE_VERIFY_LIMIT = 512
_VERIFY_SAMPLES = 20000


@dataclass(frozen=True)
class Ordering:
    """A permutation of the vertices; position 1 is eliminated first."""

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise SCGError("ordering is not a permutation of 1..n")
        object.__setattr__(
            self, "inverse", {v: i + 1 for i, v in enumerate(self.order)}
        )

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self, v: int) -> int:
        """1-based position of vertex v."""
        return self.inverse[v]

    def reversed(self) -> "Ordering":
        return Ordering(tuple(reversed(self.order)))


def mcs(g: Graph) -> Ordering:
    """Maximum cardinality search visit order.

    Vertices are listed in the order they are numbered; ties in the
    count of already-numbered neighbors go to the smallest vertex id.
    The reverse of this order is a perfect elimination ordering exactly
    when the graph is chordal.
    """
    if g.n == 0:
        raise SCGError("mcs requires a nonempty graph")
    n = g.n
    weight = [0] * (n + 1)
    numbered = [False] * (n + 1)
    order = []
    for _ in range(n):
        best = -1
        pick = 0
        for v in range(1, n + 1):
            if not numbered[v] and weight[v] > best:
                best = weight[v]
                pick = v
        numbered[pick] = True
        order.append(pick)
        for w in g.neighbor_set(pick):
            if not numbered[w]:
                weight[w] += 1
    return Ordering(tuple(order))


def is_peo(g: Graph, ordering: Ordering | Sequence[int]) -> bool:
    """Does each vertex's set of later neighbors form a clique?

    Uses the classical single-successor reduction: it suffices that the
    later neighbors of v, minus the earliest of them (w), all appear in
    the neighborhood of w.
    """
    order = ordering.order if isinstance(ordering, Ordering) else tuple(ordering)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbor_set(v) if pos[w] > pos[v]]
        if len(later) <= 1:
            continue
        first = min(later, key=pos.__getitem__)
        fn = g.neighbor_set(first)
        for w in later:
            if w != first and w not in fn:
                return False
    return True


def is_chordal(g: Graph) -> bool:
    """Chordality via MCS: the reverse visit order must be a PEO."""
    if g.n == 0:
        return True
    return is_peo(g, mcs(g).reversed())


# -- strong elimination orderings ---------------------------------------------


def _is_simple(adj: list[set[int]], v: int) -> bool:
    """A vertex is simple when the closed neighborhoods of N[v] form an
    inclusion chain (within the current residual graph)."""
    family = [adj[u] | {u} for u in adj[v] | {v}]
    family.sort(key=len)
    for a, b in zip(family, family[1:]):
        if not a <= b:
            return False
    return True


def _greedy_simple_elimination(g: Graph) -> tuple[int, ...] | None:
    """Repeatedly eliminate a simple vertex, or None when stuck.

    Candidates are ranked by residual closed-neighborhood size, then by
    full-graph closed-neighborhood size, then by id.  Placing small
    neighborhoods first matches the chain structure a strong ordering
    has to respect; the result is verified by the caller regardless.
    """
    n = g.n
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    orig_size = [0] * (n + 1)
    for v in range(1, n + 1):
        adj[v] = set(g.neighbor_set(v))
        orig_size[v] = len(adj[v])
    alive = set(range(1, n + 1))
    simple = {v for v in alive if _is_simple(adj, v)}
    order: list[int] = []
    while alive:
        if not simple:
            return None
        v = min(simple, key=lambda u: (len(adj[u]), orig_size[u], u))
        order.append(v)
        alive.discard(v)
        simple.discard(v)
        affected = set()
        for u in adj[v]:
            affected.add(u)
            affected.update(adj[u])
        affected &= alive
        for u in adj[v]:
            adj[u].discard(v)
        adj[v].clear()
        for u in affected:
            if _is_simple(adj, u):
                simple.add(u)
            else:
                simple.discard(u)
    return tuple(order)


_BACKTRACK_LIMIT = 64


def _seo_backtrack(g: Graph) -> tuple[int, ...] | None:
    """Exact search for a strong elimination ordering.

    Explores orderings position by position; a candidate must be simple
    in the residual graph and must not complete a delta pattern among
    the already-determined matrix prefix.  Complete for n within the
    backtracking limit: an ordering is found iff one exists.
    """
    n = g.n
    if n == 0:
        return ()
    closed = [0] * (n + 1)
    adj_mask = [0] * (n + 1)
    for v in range(1, n + 1):
        m = 0
        for w in g.neighbor_set(v):
            m |= 1 << (w - 1)
        adj_mask[v] = m
        closed[v] = m | 1 << (v - 1)

    def simple_in(alive: int, v: int) -> bool:
        fam = [closed[u] & alive for u in _bits(closed[v] & alive)]
        fam.sort(key=_popcount)
        for a, b in zip(fam, fam[1:]):
            if a & ~b:
                return False
        return True

    prefix: list[int] = []
    rows: list[int] = []

    def fits_prefix(v: int) -> bool:
        t = len(prefix)
        row = 1 << t
        cv = closed[v]
        for j, w in enumerate(prefix):
            if (cv >> (w - 1)) & 1:
                row |= 1 << j
        zeros = ~row & ((1 << (t + 1)) - 1)
        zm = zeros
        while zm:
            lb = zm & -zm
            zm ^= lb
            ones_before = row & (lb - 1)
            if not ones_before:
                continue
            for r in rows:
                if r & lb and r & ones_before:
                    return False
        rows.append(row)
        return True

    full = (1 << n) - 1

    def rec(alive: int) -> bool:
        if not alive:
            return True
        for vb in list(_bits_masks(alive)):
            v = vb.bit_length()
            if not simple_in(alive, v):
                continue
            if not fits_prefix(v):
                continue
            prefix.append(v)
            if rec(alive & ~vb):
                return True
            prefix.pop()
            rows.pop()
        return False

    if rec(full):
        return tuple(prefix)
    return None


def _bits(mask: int):
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length()


def _bits_masks(mask: int):
    while mask:
        b = mask & -mask
        mask ^= b
        yield b


def _popcount(x: int) -> int:
    return bin(x).count("1")


def strong_elimination_ordering(g: Graph) -> Ordering:
    """Compute a strong elimination ordering.

    Greedy simple-vertex elimination first; its output matrix is checked
    for the delta pattern before being returned.  If the greedy order
    fails the check (simple elimination alone does not force a strong
    ordering), an exact backtracking search takes over.  Raises
    NotStronglyChordalError when no strong ordering exists.
    """
    if g.n == 0:
        return Ordering(())
    order = _greedy_simple_elimination(g)
    if order is None:
        # a residual graph without a simple vertex rules the class out
        raise NotStronglyChordalError(
            "no simple vertex in a residual graph; not strongly chordal"
        )
    ordering = Ordering(order)
    if find_delta(build_matrix(g, ordering)) is None:
        return ordering
    if g.n > _BACKTRACK_LIMIT:
        raise SCGError(
            f"greedy ordering failed verification and n={g.n} exceeds the "
            f"exact-search limit {_BACKTRACK_LIMIT}"
        )
    exact = _seo_backtrack(g)
    if exact is None:
        raise NotStronglyChordalError(
            "no strong elimination ordering exists; not strongly chordal"
        )
    return Ordering(exact)


# -- neighborhood matrix -------------------------------------------------------


@dataclass
class NeighborhoodMatrix:
    """Symmetric closed-neighborhood incidence matrix in ordering order."""

    ordering: Ordering
    bits: np.ndarray  # (n, n) bool

    @property
    def n(self) -> int:
        return len(self.ordering.order)

    def entry(self, i: int, j: int) -> int:
        """1-based access."""
        return int(self.bits[i - 1, j - 1])

    def set_entry(self, i: int, j: int, value: bool) -> None:
        self.bits[i - 1, j - 1] = value
        self.bits[j - 1, i - 1] = value

    def as_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.bits]

    def copy(self) -> "NeighborhoodMatrix":
        return NeighborhoodMatrix(self.ordering, self.bits.copy())


def build_matrix(g: Graph, ordering: Ordering) -> NeighborhoodMatrix:
    """Matrix with entry (i, j) = 1 iff the vertices at positions i and j
    are equal or adjacent."""
    if len(ordering.order) != g.n:
        raise SCGError("ordering size does not match graph")
    n = g.n
    adj = np.zeros((n, n), dtype=bool)
    for v in range(1, n + 1):
        nbrs = g.neighbors(v)
        if nbrs:
            adj[v - 1, [w - 1 for w in nbrs]] = True
    perm = np.array([v - 1 for v in ordering.order])
    bits = adj[np.ix_(perm, perm)]
    np.fill_diagonal(bits, True)
    return NeighborhoodMatrix(ordering, bits)


def find_delta(mat: NeighborhoodMatrix | np.ndarray) -> tuple[int, int, int, int] | None:
    """Locate the lexicographically smallest (i, k, j, l), i<k, j<l, with
    entries (i,j) = (i,l) = (k,j) = 1 and (k,l) = 0; None if the matrix
    is free of the pattern.  Indices are 1-based.
    """
    bits = mat.bits if isinstance(mat, NeighborhoodMatrix) else mat
    n = bits.shape[0]
    if n < 2:
        return None
    block = max(1, min(n, (1 << 25) // max(1, n * n)))
    ks = np.arange(n)
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        rows = bits[i0:i1]  # (b, n)
        both = rows[:, None, :] & bits[None, :, :]
        only = rows[:, None, :] & ~bits[None, :, :]
        any_both = both.any(axis=2)
        any_only = only.any(axis=2)
        first_both = both.argmax(axis=2)
        last_only = (n - 1) - only[:, :, ::-1].argmax(axis=2)
        hits = any_both & any_only & (first_both < last_only)
        hits &= ks[None, :] > (np.arange(i0, i1))[:, None]
        if hits.any():
            ib = int(hits.any(axis=1).argmax())
            i = i0 + ib
            k = int(hits[ib].argmax())
            j = int(first_both[ib, k])
            only_row = bits[i] & ~bits[k]
            l = j + 1 + int(only_row[j + 1 :].argmax())
            return (i + 1, k + 1, j + 1, l + 1)
    return None


def verify_delta_free(mat: NeighborhoodMatrix, rng_seed: int = 0) -> None:
    """Raise if the matrix holds a delta pattern.

    Exhaustive up to EXHAUSTIVE_VERIFY_LIMIT rows (overridable with the
    SCG_VERIFY_LIMIT env var); sampled row pairs beyond that.
    """
    n = mat.n
    limit = int(os.environ.get("SCG_VERIFY_LIMIT", EXHAUSTIVE_VERIFY_LIMIT))
    if n <= limit:
        witness = find_delta(mat)
        if witness is not None:
            raise SCGError(f"matrix holds a delta pattern at {witness}")
        return
    rng = np.random.default_rng(rng_seed)
    bits = mat.bits
    pairs = rng.integers(0, n, size=(_VERIFY_SAMPLES, 2))
    for a, b in pairs:
        if a == b:
            continue
        i, k = (a, b) if a < b else (b, a)
        both = bits[i] & bits[k]
        if not both.any():
            continue
        only = bits[i] & ~bits[k]
        if not only.any():
            continue
        first_both = int(both.argmax())
        last_only = n - 1 - int(only[::-1].argmax())
        if first_both < last_only:
            raise SCGError(
                f"matrix holds a delta pattern in sampled rows ({i + 1},{k + 1})"
            )
