"""Brute-force ground truth for chordality and strong chordality.

Everything here works by exhaustive enumeration over bitmask adjacency
rows and is deliberately independent of the incremental query machinery
it is used to check.  Instance sizes are capped by a hard budget; set
``SCG_ORACLE_BUDGET`` to override it.
"""

from __future__ import annotations

import os
from typing import Iterator, Sequence

from .errors import BudgetExceededError, EdgeAbsentError, SCGError
from .graph import Graph

DEFAULT_CYCLE_BUDGET = 12
DEFAULT_ORDERING_BUDGET = 8


def _budget(default: int) -> int:
    raw = os.environ.get("SCG_ORACLE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SCGError(f"SCG_ORACLE_BUDGET not an integer: {raw!r}")
    return default


def _check_budget(n: int, default: int) -> None:
    limit = _budget(default)
    if n > limit:
        raise BudgetExceededError(f"oracle budget is n <= {limit}, got n = {n}")


# -- chordality -------------------------------------------------------------


def _has_chordless_cycle(masks: list[int], n: int) -> bool:
    """True iff some induced cycle of length >= 4 exists.

    DFS over induced paths: a path may only be extended by a vertex
    adjacent to its last vertex and to none of the earlier ones; a
    closing vertex may additionally touch the start.
    """
    for s in range(1, n + 1):
        gt = -(1 << s)  # bitmask of vertices with id > s
        smask = masks[s]
        start_nbrs = smask & gt
        # stack entries: (vertex, candidate mask, mid-chord mask)
        m = start_nbrs
        while m:
            b = m & -m
            m ^= b
            v1 = b.bit_length()
            stack = [(v1, masks[v1] & gt & ~b, 0)]
            path_masks = [b]
            while stack:
                v, cand, mid = stack[-1]
                if not cand:
                    stack.pop()
                    path_masks.pop()
                    continue
                wb = cand & -cand
                stack[-1] = (v, cand ^ wb, mid)
                if wb & mid:
                    continue
                w = wb.bit_length()
                if (smask >> (w - 1)) & 1:
                    # closing chord to s: induced cycle iff path long enough
                    if len(stack) >= 2:
                        return True
                    continue
                on = path_masks[-1] | wb
                nxt = masks[w] & gt & ~on
                stack.append((w, nxt, mid | masks[v] & ~wb))
                path_masks.append(on)
    return False


def is_chordal_brute(g: Graph) -> bool:
    """True iff g has no induced cycle of length four or more."""
    _check_budget(g.n, DEFAULT_CYCLE_BUDGET)
    return not _has_chordless_cycle(g.adjacency_masks(), g.n)


# -- simple-cycle enumeration ------------------------------------------------


def iter_simple_cycles(g: Graph, min_len: int = 3) -> Iterator[tuple[int, ...]]:
    """All simple cycles of length >= min_len, each once, canonicalized.

    Canonical form: the smallest vertex comes first and its smaller
    neighbor on the cycle second.
    """
    yield from _iter_cycles_masks(g.adjacency_masks(), g.n, min_len)


def _iter_cycles_masks(masks: list[int], n: int, min_len: int) -> Iterator[tuple[int, ...]]:
    for s in range(1, n + 1):
        gt = -(1 << s)
        smask = masks[s]
        first = smask & gt
        m = first
        while m:
            b = m & -m
            m ^= b
            v1 = b.bit_length()
            path = [s, v1]
            stack = [(v1, masks[v1] & gt & ~b)]
            onpath = (1 << (s - 1)) | b
            while stack:
                v, cand = stack[-1]
                if not cand:
                    stack.pop()
                    popped = path.pop()
                    onpath &= ~(1 << (popped - 1))
                    continue
                wb = cand & -cand
                stack[-1] = (v, cand ^ wb)
                w = wb.bit_length()
                path.append(w)
                onpath |= wb
                if len(path) >= min_len and (smask >> (w - 1)) & 1 and v1 < w:
                    yield tuple(path)
                stack.append((w, masks[w] & gt & ~onpath))
    return


# -- strong chords -----------------------------------------------------------


def check_even_cycle(g: Graph, cycle: Sequence[int]) -> None:
    """Validate an even cycle of length >= 6 against its host graph."""
    L = len(cycle)
    if L < 6 or L % 2 != 0:
        raise SCGError(f"cycle length must be even and >= 6, got {L}")
    if len(set(cycle)) != L:
        raise SCGError("cycle vertices must be distinct")
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % L]
        if not g.has_edge(u, v):
            raise EdgeAbsentError(f"cycle edge {{{u},{v}}} not in graph")


def _odd_distance_pairs(L: int) -> list[tuple[int, int]]:
    """Index pairs of a length-L cycle at odd cyclic distance >= 3."""
    pairs = []
    for d in range(3, L // 2 + 1, 2):
        for i in range(L):
            j = (i + d) % L
            if d == L - d and i > j:
                continue  # antipodal pairs appear once
            if d < L - d or i < j:
                pairs.append((i, j))
    return pairs


def strong_chords_of_cycle(cycle: Sequence[int], g: Graph) -> list[tuple[int, int]]:
    """Edges of g joining cycle vertices at odd cyclic distance >= 3."""
    check_even_cycle(g, cycle)
    L = len(cycle)
    found = []
    for i, j in _odd_distance_pairs(L):
        u, v = cycle[i], cycle[j]
        if g.has_edge(u, v):
            found.append((min(u, v), max(u, v)))
    return sorted(set(found))


def _critical_chords(masks: list[int], n: int) -> tuple[bool, set[tuple[int, int]]]:
    """Scan every even cycle of length >= 6.

    Returns (ok, critical) where ok is False as soon as some cycle has
    no strong chord at all, and critical collects, for cycles with
    exactly one strong chord, that lone chord.
    """
    critical: set[tuple[int, int]] = set()
    for cyc in _iter_cycles_masks(masks, n, 6):
        L = len(cyc)
        if L % 2:
            continue
        lone: tuple[int, int] | None = None
        count = 0
        for d in range(3, L // 2 + 1, 2):
            for i in range(L):
                j = (i + d) % L
                if d == L - d and i > j:
                    continue
                u, v = cyc[i], cyc[j]
                if (masks[u] >> (v - 1)) & 1:
                    count += 1
                    if count >= 2:
                        break
                    lone = (u, v) if u < v else (v, u)
            if count >= 2:
                break
        if count == 0:
            return False, critical
        if count == 1 and lone is not None:
            critical.add(lone)
    return True, critical


def is_strongly_chordal(g: Graph) -> bool:
    """True iff g is chordal and every even cycle >= 6 has a strong chord."""
    _check_budget(g.n, DEFAULT_CYCLE_BUDGET)
    masks = g.adjacency_masks()
    if _has_chordless_cycle(masks, g.n):
        return False
    ok, _ = _critical_chords(masks, g.n)
    return ok


# -- second oracle: ordered-matrix search ------------------------------------


def find_delta_free_ordering(g: Graph) -> tuple[int, ...] | None:
    """Search all vertex orderings for one whose neighborhood matrix is
    free of the blocking 2x2 pattern [[1,1],[1,0]].

    Backtracking with prefix pruning; returns the first ordering found
    in lexicographic candidate order, or None.  Intentionally shares no
    code with the elimination-based recogniser.
    """
    _check_budget(g.n, DEFAULT_ORDERING_BUDGET)
    n = g.n
    if n == 0:
        return ()
    closed = [0] * (n + 1)
    for v in range(1, n + 1):
        acc = 1 << (v - 1)
        for w in g.neighbor_set(v):
            acc |= 1 << (w - 1)
        closed[v] = acc

    prefix: list[int] = []
    # rows[i] = bitmask over prefix positions j with M[i][j] = 1
    rows: list[int] = []

    def place(v: int) -> bool:
        t = len(prefix)
        row = 0
        cv = closed[v]
        for j, w in enumerate(prefix):
            if (cv >> (w - 1)) & 1:
                row |= 1 << j
        row |= 1 << t
        # new pattern must have its 0 in the new row t (transpose covers
        # the symmetric case): positions j < l <= t with row[j]=1, row[l]=0
        # and some earlier row holding 1s at both j and l.
        zeros = ~row & ((1 << (t + 1)) - 1)
        zm = zeros
        while zm:
            lb = zm & -zm
            zm ^= lb
            below = lb - 1
            ones_before = row & below
            if not ones_before:
                continue
            for r in rows:
                if r & lb and r & ones_before:
                    return False
        prefix.append(v)
        rows.append(row)
        return True

    used = [False] * (n + 1)

    def rec() -> bool:
        if len(prefix) == n:
            return True
        for v in range(1, n + 1):
            if used[v]:
                continue
            if place(v):
                used[v] = True
                if rec():
                    return True
                used[v] = False
                prefix.pop()
                rows.pop()
        return False

    if rec():
        return tuple(prefix)
    return None


def has_delta_free_ordering(g: Graph) -> bool:
    return find_delta_free_ordering(g) is not None


# -- batch ground truth for edge sweeps ---------------------------------------


def survey_deletions(g: Graph) -> dict[tuple[int, int], bool]:
    """Ground truth "is g - e strongly chordal" for every edge e.

    Requires g itself strongly chordal.  One cycle enumeration is shared
    across all edges: g - e keeps exactly the cycles of g avoiding e,
    each losing at most the strong chord e.
    """
    _check_budget(g.n, DEFAULT_CYCLE_BUDGET)
    masks = g.adjacency_masks()
    ok, critical = _critical_chords(masks, g.n)
    if _has_chordless_cycle(masks, g.n) or not ok:
        raise SCGError("survey_deletions requires a strongly chordal graph")
    out: dict[tuple[int, int], bool] = {}
    for u, v in g.edges():
        if (u, v) in critical:
            out[(u, v)] = False
            continue
        mu, mv = masks[u], masks[v]
        masks[u] &= ~(1 << (v - 1))
        masks[v] &= ~(1 << (u - 1))
        out[(u, v)] = not _has_chordless_cycle(masks, g.n)
        masks[u], masks[v] = mu, mv
    return out


def _has_long_induced_path(masks: list[int], n: int, u: int, v: int) -> bool:
    """True iff g holds an induced u-v path on >= 4 vertices ({u,v} not an edge).

    Such a path plus the candidate edge {u,v} is exactly an induced
    cycle of length >= 4 in g + {u,v}.
    """
    vbit = 1 << (v - 1)
    first = masks[u] & ~vbit
    m = first
    while m:
        b = m & -m
        m ^= b
        x = b.bit_length()
        stack = [(x, masks[x] & ~(1 << (u - 1)) & ~b, 0)]
        path_masks = [b]
        while stack:
            w, cand, mid = stack[-1]
            if not cand:
                stack.pop()
                path_masks.pop()
                continue
            yb = cand & -cand
            stack[-1] = (w, cand ^ yb, mid)
            if yb & mid:
                continue
            if yb & masks[u] and yb != vbit:
                continue  # chord back to u; not extendable, not a closure
            y = yb.bit_length()
            if y == v:
                if len(stack) >= 2:
                    return True
                continue
            on = path_masks[-1] | yb
            stack.append((y, masks[y] & ~(1 << (u - 1)) & ~on, mid | masks[w] & ~yb))
            path_masks.append(on)
    return False


def survey_insertions(g: Graph) -> dict[tuple[int, int], bool]:
    """Ground truth "is g + e strongly chordal" for every non-edge e.

    Requires g itself strongly chordal, so only structures through the
    new edge need to be examined: induced cycles of g + e all use e, and
    even cycles of g keep their strong chords.
    """
    _check_budget(g.n, DEFAULT_CYCLE_BUDGET)
    n = g.n
    masks = g.adjacency_masks()
    out: dict[tuple[int, int], bool] = {}
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if (masks[u] >> (v - 1)) & 1:
                continue
            out[(u, v)] = _insertable(masks, n, u, v)
    return out


def _insertable(masks: list[int], n: int, u: int, v: int) -> bool:
    if _has_long_induced_path(masks, n, u, v):
        return False
    # even cycles through the new edge: simple u-v paths of odd edge
    # length >= 5; each closes into an even cycle of length >= 6 whose
    # strong chords are ordinary edges of g.
    ubit = 1 << (u - 1)
    vbit = 1 << (v - 1)
    path = [u]
    onpath = ubit
    stack = [masks[u] & ~vbit & ~ubit]
    while stack:
        cand = stack[-1]
        if not cand:
            stack.pop()
            w = path.pop()
            onpath &= ~(1 << (w - 1))
            continue
        yb = cand & -cand
        stack[-1] = cand ^ yb
        if yb == vbit:
            if len(path) >= 5 and len(path) % 2 == 1:
                if not _cycle_has_strong_chord(masks, path + [v]):
                    return False
            continue
        if yb & onpath:
            continue
        if len(path) >= n - 1:
            continue
        y = yb.bit_length()
        path.append(y)
        onpath |= yb
        stack.append(masks[y] & ~ubit)
    return True


def _cycle_has_strong_chord(masks: list[int], cyc: list[int]) -> bool:
    L = len(cyc)
    for d in range(3, L // 2 + 1, 2):
        for i in range(L):
            j = (i + d) % L
            if d == L - d and i > j:
                continue
            a, b = cyc[i], cyc[j]
            if (masks[a] >> (b - 1)) & 1:
                return True
    return False


# -- chord ensembles of even cycles -------------------------------------------


def _chords_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Do two chords of a cycle on positions 0..L-1 strictly cross?"""
    (p, q), (r, s) = sorted(a), sorted(b)
    if len({p, q, r, s}) < 4:
        return False  # shared endpoint never counts as crossing
    return (p < r < q) != (p < s < q)


def check_ensemble(two_n: int, chords: set[tuple[int, int]]) -> None:
    """Validate an ensemble for the standard cycle on positions 1..two_n.

    Requirements: exactly two_n/2 - 2 chords, each joining positions at
    odd cyclic distance >= 3, pairwise non-crossing (shared endpoints
    allowed).  Together with the cycle these cut the disk into
    quadrilaterals.
    """
    n = two_n // 2
    if len(chords) != n - 2:
        raise SCGError(f"ensemble must hold {n - 2} chords, got {len(chords)}")
    for a, b in chords:
        d = abs(a - b)
        d = min(d, two_n - d)
        if d % 2 == 0 or d < 3:
            raise SCGError(f"chord {(a, b)} is not strong for the {two_n}-cycle")
    cl = sorted(chords)
    for i in range(len(cl)):
        for j in range(i + 1, len(cl)):
            if _chords_cross(cl[i], cl[j]):
                raise SCGError(f"chords {cl[i]} and {cl[j]} cross")


def _quadrangulations(poly: tuple[int, ...]) -> list[frozenset[tuple[int, int]]]:
    """All partitions of a polygon (listed in boundary order) into quads.

    Splits on the quad face containing the boundary edge (poly[0],
    poly[1]); its two remaining corners must sit at even/odd positions
    so that all three sub-regions stay even.
    """
    m = len(poly)
    if m == 4:
        return [frozenset()]
    out: list[frozenset[tuple[int, int]]] = []
    for a in range(2, m - 1, 2):
        for b in range(a + 1, m, 2):
            chords = []
            if a > 2:
                chords.append(_norm(poly[1], poly[a]))
            if b > a + 1:
                chords.append(_norm(poly[a], poly[b]))
            if b < m - 1:
                chords.append(_norm(poly[b], poly[0]))
            partials = [frozenset(chords)]
            for sub in (poly[1 : a + 1], poly[a : b + 1], poly[b:] + (poly[0],)):
                if len(sub) < 4:
                    continue
                sub_sets = _quadrangulations(sub)
                partials = [p | extra for p in partials for extra in sub_sets]
            out.extend(partials)
    return out


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def enumerate_ensembles(n: int) -> list[frozenset[tuple[int, int]]]:
    """All ensembles of strong chords of the cycle 1..2n (n >= 3)."""
    two_n = 2 * n
    poly = tuple(range(1, two_n + 1))
    found = sorted(set(_quadrangulations(poly)), key=sorted)
    for ens in found:
        check_ensemble(two_n, set(ens))
    return found


class AppendixReport:
    """Counts from exhaustively checking the chord-ensemble claims."""

    def __init__(self, n: int, candidates: int, ensembles: int, certificates: int, elapsed_us: int):
        self.n = n
        self.candidates = candidates
        self.ensembles = ensembles
        self.certificates = certificates
        self.elapsed_us = elapsed_us

    def as_line(self) -> str:
        return (
            f"n={self.n} candidates={self.candidates} ensembles={self.ensembles} "
            f"certificates={self.certificates} elapsed_us={self.elapsed_us}"
        )


def verify_appendix(n: int) -> AppendixReport:
    """Check, for the cycle on 2n vertices, that every strong chord
    extends to an ensemble and that every ensemble chord is a strong
    chord of a 6-cycle drawn from cycle-plus-ensemble edges.
    """
    import time

    if not 3 <= n <= max(8, _budget(8)):
        raise BudgetExceededError(f"appendix verification supports 3 <= n <= 8, got {n}")
    t0 = time.perf_counter_ns()
    two_n = 2 * n
    ensembles = enumerate_ensembles(n)

    candidates = []
    for a in range(1, two_n + 1):
        for b in range(a + 1, two_n + 1):
            d = min(b - a, two_n - (b - a))
            if d % 2 == 1 and d >= 3:
                candidates.append((a, b))

    membership = set()
    for ens in ensembles:
        membership.update(ens)
    for c in candidates:
        if c not in membership:
            raise SCGError(f"strong chord {c} of C_{two_n} extends to no ensemble")

    certificates = 0
    for ens in ensembles:
        host = Graph(two_n)
        for i in range(1, two_n + 1):
            host.add_edge(i, i % two_n + 1)
        for a, b in ens:
            host.add_edge(a, b)
        for a, b in ens:
            if not _strong_chord_of_some_six_cycle(host, a, b):
                raise SCGError(f"ensemble chord {(a, b)} certifies no 6-cycle")
            certificates += 1

    elapsed_us = (time.perf_counter_ns() - t0) // 1000
    return AppendixReport(n, len(candidates), len(ensembles), certificates, elapsed_us)


def _strong_chord_of_some_six_cycle(g: Graph, a: int, b: int) -> bool:
    """Is {a,b} a distance-3 chord of some 6-cycle of g - {a,b}?"""
    sides = []
    for x in g.neighbors(a):
        if x == b:
            continue
        for y in g.neighbors(x):
            if y in (a, b):
                continue
            if g.has_edge(y, b):
                sides.append((x, y))
    for i in range(len(sides)):
        x1, y1 = sides[i]
        for j in range(i + 1, len(sides)):
            x2, y2 = sides[j]
            if len({x1, y1, x2, y2}) == 4:
                return True
    return False
