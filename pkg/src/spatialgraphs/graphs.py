"""Finite multigraphs (loops and parallel edges allowed) and their cycle sets.

A cycle is a subgraph homeomorphic to a circle: a connected edge set in
which every vertex has degree exactly 2.  A loop edge alone is a 1-cycle
and two parallel edges form a 2-cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import CycleCapExceeded, GraphError

DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle subgraph in canonical form: the sorted tuple of its edge ids."""

    edges: tuple[str, ...]

    @staticmethod
    def of(edges: Iterable[str]) -> "Cycle":
        return Cycle(tuple(sorted(edges)))

    def __contains__(self, edge: str) -> bool:
        return edge in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[str]:
        return iter(self.edges)


class MultiGraph:
    """A finite multigraph with named vertices and edges.

    Every vertex must have degree at least 2 (no isolated and no free
    vertices); loops count twice toward the degree.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, tuple[str, str]]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        self.edges: dict[str, tuple[str, str]] = {}
        for eid, ends in edges:
            if eid in self.edges:
                raise GraphError(f"duplicate edge id {eid!r}")
            u, v = ends
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {eid!r} references unknown vertex")
            self.edges[eid] = (u, v)
        self._incidence: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            self._incidence[u].append(eid)
            if v != u:
                self._incidence[v].append(eid)
        for v in self.vertices:
            if self.degree(v) < 2:
                raise GraphError(f"vertex {v!r} has degree {self.degree(v)} < 2")

    # -- basic queries ------------------------------------------------

    def degree(self, v: str) -> int:
        return sum(2 if self.is_loop(e) else 1 for e in self._incidence[v])

    def edges_at(self, v: str) -> tuple[str, ...]:
        """Edge ids incident to v (loops listed once)."""
        return tuple(self._incidence[v])

    def is_loop(self, e: str) -> bool:
        u, v = self.edge_ends(e)
        return u == v

    def edge_ends(self, e: str) -> tuple[str, str]:
        try:
            return self.edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e!r}") from None

    def has_edge(self, e: str) -> bool:
        return e in self.edges

    def adjacent(self, e1: str, e2: str) -> bool:
        """True if the two (distinct) edges share at least one endpoint."""
        if e1 == e2:
            return False
        a = set(self.edge_ends(e1))
        b = set(self.edge_ends(e2))
        return bool(a & b)

    def components(self) -> list[frozenset[str]]:
        """Connected components as vertex sets, sorted by smallest vertex."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.values():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        comps: dict[str, set[str]] = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        return sorted((frozenset(c) for c in comps.values()), key=lambda c: min(c))

    def induced_subgraph(self, vertex_set: frozenset[str]) -> "MultiGraph":
        verts = [v for v in self.vertices if v in vertex_set]
        eds = [
            (e, ends)
            for e, ends in self.edges.items()
            if ends[0] in vertex_set and ends[1] in vertex_set
        ]
        return MultiGraph(verts, eds)

    def is_circle(self) -> bool:
        """True if the graph is homeomorphic to the 1-sphere."""
        return (
            len(self.components()) == 1
            and all(self.degree(v) == 2 for v in self.vertices)
        )

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "ends": list(ends)} for e, ends in self.edges.items()],
        }

    @staticmethod
    def from_json(data: Mapping) -> "MultiGraph":
        try:
            vertices = data["vertices"]
            edges = [(e["id"], (e["ends"][0], e["ends"][1])) for e in data["edges"]]
        except (KeyError, IndexError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return MultiGraph(vertices, edges)

    @staticmethod
    def loads(text: str) -> "MultiGraph":
        return MultiGraph.from_json(json.loads(text))

    def __repr__(self) -> str:
        return f"MultiGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# -- cycle enumeration ----------------------------------------------------


def enumerate_cycles(g: MultiGraph, cap: int = DEFAULT_CYCLE_CAP) -> tuple[Cycle, ...]:
    """All cycles of ``g`` in canonical form, deterministically ordered.

    Backtracking DFS over edges with canonical-start pruning: each cycle is
    generated exactly once, from its smallest edge id.  Loops are 1-cycles
    and never occur inside longer cycles (they would force degree 4).
    """
    found: list[Cycle] = []
    edge_ids = sorted(g.edges)

    def emit(edges: tuple[str, ...]) -> None:
        found.append(Cycle(tuple(sorted(edges))))
        if len(found) > cap:
            raise CycleCapExceeded(f"more than {cap} cycles")

    for start in edge_ids:
        u, v = g.edge_ends(start)
        if u == v:
            emit((start,))
            continue
        # Path from v back to u, only via edges with id > start, no repeated
        # vertices; u itself only as the final step.
        path_edges = [start]
        visited = {v}

        def extend(current: str) -> None:
            for e in g.edges_at(current):
                if e <= start or e in path_edges or g.is_loop(e):
                    continue
                a, b = g.edge_ends(e)
                nxt = b if a == current else a
                if nxt == u:
                    emit(tuple(path_edges) + (e,))
                    continue
                if nxt in visited:
                    continue
                visited.add(nxt)
                path_edges.append(e)
                extend(nxt)
                path_edges.pop()
                visited.discard(nxt)

        extend(v)
    return tuple(sorted(set(found)))


def cycles_through_edge(g: MultiGraph, e: str, cap: int = DEFAULT_CYCLE_CAP) -> tuple[Cycle, ...]:
    """The set of cycles of ``g`` containing the edge ``e``."""
    g.edge_ends(e)
    return tuple(c for c in enumerate_cycles(g, cap) if e in c)


def cycles_through_adjacent_pair(
    g: MultiGraph, e1: str, e2: str, cap: int = DEFAULT_CYCLE_CAP
) -> tuple[Cycle, ...]:
    """Cycles containing both edges of an adjacent pair."""
    if not g.adjacent(e1, e2):
        raise GraphError(f"edges {e1!r} and {e2!r} are not adjacent")
    return tuple(c for c in enumerate_cycles(g, cap) if e1 in c and e2 in c)


# -- homology representatives ---------------------------------------------


def cycle_class_mod2(g: MultiGraph, cycle: Cycle) -> frozenset[str]:
    """The mod-2 edge-indicator vector of a cycle (its own H1 representative)."""
    for e in cycle:
        g.edge_ends(e)
    return frozenset(cycle.edges)


def z2_sum(vectors: Iterable[frozenset[str]]) -> frozenset[str]:
    """Sum of mod-2 edge vectors (symmetric difference)."""
    total: frozenset[str] = frozenset()
    for v in vectors:
        total = total ^ v
    return total


def cycle_traversal(g: MultiGraph, cycle: Cycle, base: tuple[str, int]) -> list[tuple[str, int]]:
    """Traverse ``cycle`` as a closed walk of directed edges.

    ``base`` is a directed edge ``(edge_id, +1|-1)`` on the cycle; +1 means
    along the edge's reference direction ``ends[0] -> ends[1]``.  Returns the
    full list of directed edges in traversal order, starting with ``base``.
    """
    base_edge, base_dir = base
    if base_edge not in cycle:
        raise GraphError(f"base edge {base_edge!r} not on the cycle")
    if base_dir not in (1, -1):
        raise GraphError("base direction must be +1 or -1")
    if g.is_loop(base_edge):
        if len(cycle) != 1:
            raise GraphError("loop edge inside a longer cycle is impossible")
        return [(base_edge, base_dir)]

    incident: dict[str, list[str]] = {}
    for e in cycle:
        for x in set(g.edge_ends(e)):
            incident.setdefault(x, []).append(e)

    walk = [(base_edge, base_dir)]
    u0, v0 = g.edge_ends(base_edge)
    start = u0 if base_dir == 1 else v0
    at = v0 if base_dir == 1 else u0
    prev = base_edge
    while at != start:
        candidates = [e for e in incident[at] if e != prev]
        if len(candidates) != 1:
            raise GraphError("edge set is not a cycle")
        nxt = candidates[0]
        a, b = g.edge_ends(nxt)
        direction = 1 if a == at else -1
        walk.append((nxt, direction))
        at = b if direction == 1 else a
        prev = nxt
    if len(walk) != len(cycle):
        raise GraphError("edge set is not a single cycle")
    return walk


def oriented_cycle_class(
    g: MultiGraph, cycle: Cycle, base: tuple[str, int], modulus: int
) -> dict[str, int]:
    """Signed edge-traversal vector of the cycle, oriented by ``base``.

    Entry ``+1`` means the edge is traversed along its reference direction,
    ``-1`` against it; reduced mod ``modulus`` when it is positive.
    """
    if modulus < 0:
        raise GraphError("modulus must be >= 0")
    walk = cycle_traversal(g, cycle, base)
    vec = {e: (d % modulus if modulus else d) for e, d in walk}
    return vec


def is_cycle_subgraph(g: MultiGraph, edges: Iterable[str]) -> bool:
    """True if the edge set induces a connected subgraph, 2-regular everywhere."""
    edge_list = list(edges)
    if not edge_list:
        return False
    deg: dict[str, int] = {}
    for e in edge_list:
        u, v = g.edge_ends(e)  # loops give (u, u) and count twice
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    # connectivity over the touched vertices
    verts = set(deg)
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for e in edge_list:
        u, v = g.edge_ends(e)
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    stack = [next(iter(verts))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x] - seen)
    return seen == verts


def brute_force_cycles(g: MultiGraph) -> tuple[Cycle, ...]:
    """Exhaustive oracle: all edge subsets that are connected and 2-regular.

    Exponential; intended for graphs with at most ~12 edges in tests.
    """
    ids = sorted(g.edges)
    out = []
    for mask in range(1, 1 << len(ids)):
        subset = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        if is_cycle_subgraph(g, subset):
            out.append(Cycle(tuple(sorted(subset))))
    return tuple(sorted(out))
