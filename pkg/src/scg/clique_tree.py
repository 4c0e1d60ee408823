"""Clique trees of chordal graphs and their maintenance under deletion.

Node ids are stable: once assigned they are never reused, so traces of
repeated updates stay unambiguous.  A disconnected graph yields a clique
forest, one tree per component.
"""

from __future__ import annotations

import json
from typing import Iterable

from .errors import NotChordalError, PreconditionViolatedError, SCGError
from .graph import Graph
from .recognition import is_peo, mcs


class CliqueTree:
    """Forest whose nodes are maximal cliques, edges weighted by overlap."""

    def __init__(self):
        self.node_vertices: dict[int, set[int]] = {}
        self.adj: dict[int, dict[int, int]] = {}  # node -> {neighbor: weight}
        self.vertex_index: dict[int, set[int]] = {}  # vertex -> node ids
        self._next_id = 1

    # -- construction helpers -------------------------------------------------

    def _new_node(self, vertices: Iterable[int]) -> int:
        nid = self._next_id
        self._next_id += 1
        vs = set(vertices)
        self.node_vertices[nid] = vs
        self.adj[nid] = {}
        for v in vs:
            self.vertex_index.setdefault(v, set()).add(nid)
        return nid

    def _add_tree_edge(self, a: int, b: int) -> None:
        w = len(self.node_vertices[a] & self.node_vertices[b])
        self.adj[a][b] = w
        self.adj[b][a] = w

    def _remove_node(self, nid: int) -> None:
        for v in self.node_vertices[nid]:
            self.vertex_index[v].discard(nid)
            if not self.vertex_index[v]:
                del self.vertex_index[v]
        for nb in list(self.adj[nid]):
            del self.adj[nb][nid]
        del self.adj[nid]
        del self.node_vertices[nid]

    # -- queries ----------------------------------------------------------------

    def node_ids(self) -> list[int]:
        return sorted(self.node_vertices)

    def node_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.node_vertices[i]) for i in self.node_ids()]

    def tree_edges(self) -> list[tuple[int, int, int]]:
        out = []
        for a in sorted(self.adj):
            for b, w in self.adj[a].items():
                if a < b:
                    out.append((a, b, w))
        return sorted(out)

    def nodes_containing(self, v: int) -> set[int]:
        return set(self.vertex_index.get(v, ()))

    def count_nodes_containing_edge(self, u: int, v: int) -> int:
        return len(self.vertex_index.get(u, set()) & self.vertex_index.get(v, set()))

    def copy(self) -> "CliqueTree":
        t = CliqueTree()
        t.node_vertices = {i: set(s) for i, s in self.node_vertices.items()}
        t.adj = {i: dict(d) for i, d in self.adj.items()}
        t.vertex_index = {v: set(s) for v, s in self.vertex_index.items()}
        t._next_id = self._next_id
        return t

    # -- export -------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "nodes": [
                {"id": i, "vertices": sorted(self.node_vertices[i])}
                for i in self.node_ids()
            ],
            "edges": [{"a": a, "b": b, "w": w} for a, b, w in self.tree_edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["graph cliquetree {"]
        for i in self.node_ids():
            label = " ".join(str(v) for v in sorted(self.node_vertices[i]))
            lines.append(f'  n{i} [label="{{{label}}}"];')
        for a, b, w in self.tree_edges():
            lines.append(f'  n{a} -- n{b} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- validation ---------------------------------------------------------

    def validate(self, g: Graph) -> None:
        """Check all structural invariants against the represented graph."""
        seen_sets = set()
        for nid, K in self.node_vertices.items():
            fs = frozenset(K)
            if fs in seen_sets:
                raise SCGError(f"duplicate clique node {sorted(K)}")
            seen_sets.add(fs)
            kl = sorted(K)
            for i, a in enumerate(kl):
                for b in kl[i + 1 :]:
                    if not g.has_edge(a, b):
                        raise SCGError(f"node {nid} is not a clique: missing {{{a},{b}}}")
            for w in g.vertices():
                if w in K:
                    continue
                if all(g.has_edge(w, a) for a in kl):
                    raise SCGError(f"node {nid} not maximal: {w} extends it")
        covered = set()
        for K in self.node_vertices.values():
            kl = sorted(K)
            for i, a in enumerate(kl):
                for b in kl[i + 1 :]:
                    covered.add((a, b))
        for e in g.edges():
            if e not in covered:
                raise SCGError(f"edge {e} not covered by any clique node")
        for v in g.vertices():
            if v not in self.vertex_index or not self.vertex_index[v]:
                raise SCGError(f"vertex {v} appears in no clique node")
        # vertex_index coherence
        for v, ids in self.vertex_index.items():
            for nid in ids:
                if v not in self.node_vertices[nid]:
                    raise SCGError("vertex_index out of sync")
        for nid, K in self.node_vertices.items():
            for v in K:
                if nid not in self.vertex_index.get(v, set()):
                    raise SCGError("vertex_index out of sync")
        # weights and forest shape
        for a, b, w in self.tree_edges():
            true_w = len(self.node_vertices[a] & self.node_vertices[b])
            if w != true_w:
                raise SCGError(f"edge ({a},{b}) weight {w} != overlap {true_w}")
        comps = self._forest_components()
        ids_seen = sum(len(c) for c in comps)
        if ids_seen != len(self.node_vertices):
            raise SCGError("tree edges contain a cycle")
        # per component: sum of clique sizes minus sum of weights = vertices
        for comp in comps:
            size_sum = sum(len(self.node_vertices[i]) for i in comp)
            weight_sum = sum(
                w for a, b, w in self.tree_edges() if a in comp and b in comp
            )
            verts = set()
            for i in comp:
                verts |= self.node_vertices[i]
            if size_sum - weight_sum != len(verts):
                raise SCGError(
                    f"component identity failed: {size_sum} - {weight_sum} != {len(verts)}"
                )
        # induced-subtree property per vertex
        for v, ids in self.vertex_index.items():
            if not self._connected_within(ids):
                raise SCGError(f"nodes containing {v} do not induce a subtree")

    def _forest_components(self) -> list[set[int]]:
        comps = []
        left = set(self.node_vertices)
        while left:
            start = left.pop()
            comp = {start}
            stack = [start]
            while stack:
                cur = stack.pop()
                for nb in self.adj[cur]:
                    if nb in left:
                        left.discard(nb)
                        comp.add(nb)
                        stack.append(nb)
            comps.append(comp)
        # acyclicity: edges = nodes - components
        n_edges = len(self.tree_edges())
        if n_edges != len(self.node_vertices) - len(comps):
            raise SCGError("tree edge count inconsistent with forest shape")
        return comps

    def _connected_within(self, ids: set[int]) -> bool:
        if not ids:
            return False
        start = next(iter(ids))
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nb in self.adj[cur]:
                if nb in ids and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return seen == ids


def build_clique_tree(g: Graph, start_id: int = 1) -> CliqueTree:
    """Clique forest of a chordal graph via maximum cardinality search.

    A new clique starts whenever the count of already-numbered neighbors
    fails to increase; each new clique hangs off the node housing the
    most recently numbered vertex of its attachment set.  ``start_id``
    lets rebuilds continue a session's id sequence instead of reusing
    ids.
    """
    t = CliqueTree()
    t._next_id = start_id
    if g.n == 0:
        return t
    order = mcs(g)
    if not is_peo(g, order.reversed()):
        raise NotChordalError("graph is not chordal")

    pos = {v: i for i, v in enumerate(order.order)}
    numbered: set[int] = set()
    clique_of: dict[int, int] = {}
    current: int | None = None
    prev_card = -1
    for v in order.order:
        attach = {w for w in g.neighbor_set(v) if w in numbered}
        if len(attach) <= prev_card or current is None:
            nid = t._new_node(attach | {v})
            if attach:
                anchor = max(attach, key=pos.__getitem__)
                t._add_tree_edge(nid, clique_of[anchor])
            current = nid
        else:
            t.node_vertices[current].add(v)
            t.vertex_index.setdefault(v, set()).add(current)
        clique_of[v] = current
        prev_card = len(attach)
        numbered.add(v)
    return t


def count_nodes_containing_edge(t: CliqueTree, u: int, v: int) -> int:
    return t.count_nodes_containing_edge(u, v)


def update_after_deletion(t: CliqueTree, g: Graph, u: int, v: int) -> CliqueTree:
    """Rework the clique tree for the deletion of {u, v}.

    ``g`` is the graph still holding the edge; the edge must lie in
    exactly one node x.  x splits into x1 = K_x - {v} and x2 = K_x - {u};
    neighbors holding u move to x1, neighbors holding v to x2, the rest
    to x1.  A side that is no longer maximal (detected by an original
    edge weight of |K_x| - 1 toward a matching neighbor) is contracted
    into that neighbor, the smallest node id winning ties.  Mutates and
    returns t.
    """
    if not g.has_edge(u, v):
        raise PreconditionViolatedError(f"edge {{{u},{v}}} not in graph")
    hit = t.vertex_index.get(u, set()) & t.vertex_index.get(v, set())
    if len(hit) != 1:
        raise PreconditionViolatedError(
            f"edge {{{u},{v}}} lies in {len(hit)} nodes, need exactly 1"
        )
    x = next(iter(hit))
    K_x = set(t.node_vertices[x])
    k = len(K_x)
    neighbors = list(t.adj[x].items())  # (node id, original weight)

    n_u: list[tuple[int, int]] = []
    n_v: list[tuple[int, int]] = []
    n_rest: list[tuple[int, int]] = []
    for y, w in neighbors:
        K_y = t.node_vertices[y]
        if u in K_y:
            n_u.append((y, w))
        elif v in K_y:
            n_v.append((y, w))
        else:
            n_rest.append((y, w))

    t._remove_node(x)
    x1 = t._new_node(K_x - {v})
    x2 = t._new_node(K_x - {u})
    if k > 2:
        t._add_tree_edge(x1, x2)
    for y, _ in n_u:
        t._add_tree_edge(x1, y)
    for y, _ in n_rest:
        t._add_tree_edge(x1, y)
    for y, _ in n_v:
        t._add_tree_edge(x2, y)

    absorb_u = sorted(y for y, w in n_u if w == k - 1)
    absorb_v = sorted(y for y, w in n_v if w == k - 1)
    if absorb_u:
        _contract(t, x1, absorb_u[0])
    if absorb_v:
        _contract(t, x2, absorb_v[0])
    return t


def _contract(t: CliqueTree, doomed: int, into: int) -> None:
    """Merge tree node ``doomed`` (a subset clique) into neighbor ``into``."""
    for nb in list(t.adj[doomed]):
        if nb != into:
            t._add_tree_edge(into, nb)
    t._remove_node(doomed)
