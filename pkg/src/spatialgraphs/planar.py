"""Cellular embeddings of graphs in the 2-sphere via rotation systems.

A rotation system lists, for each vertex, the cyclic order of its incident
half-edges.  Faces are traced combinatorially; the embedding is accepted
only when Euler's formula V - E + F = 2 holds, which for a connected graph
makes the embedding cellular.

Half-edge notation: ``(edge_id, 0)`` is the half at ``ends[0]`` (written
``"e+"`` in JSON) and ``(edge_id, 1)`` the half at ``ends[1]`` (``"e-"``).
A dart is a directed edge ``(edge_id, direction)`` with direction ``0``
meaning ``ends[0] -> ends[1]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import BridgePresent, NotCheckerboardColorable, RotationError
from .graphs import Cycle, MultiGraph
from .weights import Weight

HalfEdge = tuple[str, int]
Dart = tuple[str, int]


def _half_edge_from_token(token: str) -> HalfEdge:
    if token.endswith("+"):
        return (token[:-1], 0)
    if token.endswith("-"):
        return (token[:-1], 1)
    raise RotationError(f"half-edge token {token!r} must end in '+' or '-'")


def _half_edge_token(h: HalfEdge) -> str:
    return h[0] + ("+" if h[1] == 0 else "-")


class RotationSystem:
    """Cyclic half-edge orders at each vertex of a multigraph."""

    def __init__(self, g: MultiGraph, rotation: Mapping[str, list[HalfEdge]]):
        self.graph = g
        self.rotation: dict[str, tuple[HalfEdge, ...]] = {
            v: tuple(rotation.get(v, ())) for v in g.vertices
        }
        expected: set[HalfEdge] = set()
        for e, (u, v) in g.edges.items():
            expected.add((e, 0))
            expected.add((e, 1))
        seen: set[HalfEdge] = set()
        for v, halves in self.rotation.items():
            for h in halves:
                if h in seen:
                    raise RotationError(f"half-edge {_half_edge_token(h)} listed twice")
                if h not in expected:
                    raise RotationError(f"unknown half-edge {_half_edge_token(h)}")
                e, side = h
                if g.edge_ends(e)[side] != v:
                    raise RotationError(
                        f"half-edge {_half_edge_token(h)} does not attach at vertex {v!r}"
                    )
                seen.add(h)
        if seen != expected:
            missing = sorted(_half_edge_token(h) for h in expected - seen)
            raise RotationError(f"missing half-edges: {', '.join(missing)}")
        self._next: dict[HalfEdge, HalfEdge] = {}
        self._prev: dict[HalfEdge, HalfEdge] = {}
        for v, halves in self.rotation.items():
            n = len(halves)
            for i, h in enumerate(halves):
                self._next[h] = halves[(i + 1) % n]
                self._prev[h] = halves[(i - 1) % n]

    def successor(self, h: HalfEdge) -> HalfEdge:
        return self._next[h]

    def predecessor(self, h: HalfEdge) -> HalfEdge:
        return self._prev[h]

    def to_json(self) -> dict:
        return {
            "rotation": {
                v: [_half_edge_token(h) for h in halves]
                for v, halves in self.rotation.items()
            }
        }

    @staticmethod
    def from_json(g: MultiGraph, data: Mapping) -> "RotationSystem":
        rot = {
            v: [_half_edge_from_token(t) for t in tokens]
            for v, tokens in data["rotation"].items()
        }
        return RotationSystem(g, rot)

    @staticmethod
    def loads(g: MultiGraph, text: str) -> "RotationSystem":
        return RotationSystem.from_json(g, json.loads(text))


def _dart_origin_half(d: Dart) -> HalfEdge:
    e, direction = d
    return (e, 0) if direction == 0 else (e, 1)


def _reverse(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


def _dart_key(d: Dart) -> tuple[str, int]:
    return d


@dataclass(frozen=True)
class Face:
    """A face boundary walk: a cyclic sequence of darts."""

    darts: tuple[Dart, ...]

    def edges(self) -> tuple[str, ...]:
        return tuple(d[0] for d in self.darts)

    @property
    def is_cycle(self) -> bool:
        es = self.edges()
        return len(es) == len(set(es))

    def cycle(self) -> Cycle:
        return Cycle(tuple(sorted(self.edges())))

    def __len__(self) -> int:
        return len(self.darts)


def trace_faces(g: MultiGraph, rot: RotationSystem) -> list[Face]:
    """All face boundary walks of the embedding, with a sphericity check.

    The walk continuation rule is: after traversing dart ``d``, leave the
    target vertex through the rotation predecessor of ``d``'s reversal.
    Each face is rotated to start at its least dart; faces are sorted by
    that least dart.  Raises ``RotationError`` if V - E + F != 2.
    """
    darts: list[Dart] = []
    for e in g.edges:
        darts.append((e, 0))
        darts.append((e, 1))

    def next_dart(d: Dart) -> Dart:
        rev = _reverse(d)
        h = _dart_origin_half(rev)
        prev_half = rot.predecessor(h)
        e, side = prev_half
        return (e, 0) if side == 0 else (e, 1)

    remaining = set(darts)
    faces: list[Face] = []
    while remaining:
        start = min(remaining, key=_dart_key)
        walk = [start]
        remaining.discard(start)
        d = next_dart(start)
        while d != start:
            walk.append(d)
            remaining.discard(d)
            d = next_dart(d)
        faces.append(Face(tuple(walk)))
    faces.sort(key=lambda f: _dart_key(f.darts[0]))
    v, e, f = len(g.vertices), len(g.edges), len(faces)
    if len(g.components()) != 1:
        raise RotationError("rotation systems are defined for connected graphs only")
    if v - e + f != 2:
        raise RotationError(f"rotation is not spherical: V-E+F = {v}-{e}+{f} = {v - e + f}")
    return faces


def face_cycles(g: MultiGraph, rot: RotationSystem) -> tuple[Cycle, ...]:
    """The face cycles of the embedding as a subset of the graph's cycles.

    Raises ``BridgePresent`` when some face walk repeats an edge, which
    happens exactly when the graph has a bridge.
    """
    faces = trace_faces(g, rot)
    repeated: set[str] = set()
    for face in faces:
        es = face.edges()
        repeated |= {x for x in es if es.count(x) > 1}
    if repeated:
        raise BridgePresent(repeated)
    return tuple(sorted({f.cycle() for f in faces}))


@dataclass(frozen=True)
class CheckerboardColoring:
    """A 2-coloring of the faces with adjacent faces colored differently."""

    faces: tuple[Face, ...]
    colors: tuple[str, ...]  # "black" | "white", parallel to faces

    def black_cycles(self) -> tuple[Cycle, ...]:
        return tuple(sorted(f.cycle() for f, c in zip(self.faces, self.colors) if c == "black"))

    def white_cycles(self) -> tuple[Cycle, ...]:
        return tuple(sorted(f.cycle() for f, c in zip(self.faces, self.colors) if c == "white"))


def checkerboard_coloring(g: MultiGraph, rot: RotationSystem) -> CheckerboardColoring:
    """2-color the faces; the face holding the least dart is black.

    Raises ``NotCheckerboardColorable`` when the face adjacency graph is
    not bipartite, and ``BridgePresent`` via the face-cycle check.
    """
    faces = trace_faces(g, rot)
    face_cycles(g, rot)  # bridge check
    face_of_dart: dict[Dart, int] = {}
    for i, face in enumerate(faces):
        for d in face.darts:
            face_of_dart[d] = i
    color: dict[int, str] = {}
    # faces are sorted by least dart, so face 0 holds the overall least dart
    stack = [(0, "black")]
    while stack:
        i, col = stack.pop()
        if i in color:
            if color[i] != col:
                raise NotCheckerboardColorable("face adjacency graph is odd")
            continue
        color[i] = col
        other_col = "white" if col == "black" else "black"
        for d in faces[i].darts:
            j = face_of_dart[_reverse(d)]
            stack.append((j, other_col))
    if len(color) != len(faces):
        raise NotCheckerboardColorable("disconnected face adjacency")
    return CheckerboardColoring(tuple(faces), tuple(color[i] for i in range(len(faces))))


def checkerboard_weight(g: MultiGraph, rot: RotationSystem) -> Weight:
    """The integer weight +1 on black face cycles, -1 on white, 0 elsewhere.

    Requires the graph not to be homeomorphic to a circle.  By Euler, each
    edge borders one black and one white face, so the result is weakly
    balanced on every edge.
    """
    if g.is_circle():
        raise RotationError("checkerboard weight undefined for a circle graph")
    coloring = checkerboard_coloring(g, rot)
    values: dict[tuple[str, ...], int] = {}
    for c in coloring.black_cycles():
        values[c.edges] = 1
    for c in coloring.white_cycles():
        values[c.edges] = -1
    return Weight(0, values)


def face_weight_mod2(g: MultiGraph, rot: RotationSystem) -> Weight:
    """The Z2 indicator weight of the set of face cycles (totally balanced)."""
    return Weight(2, {c.edges: 1 for c in face_cycles(g, rot)})


@dataclass(frozen=True)
class RibbonBoundary:
    """Boundary curves of a regular neighborhood of the embedded graph.

    One closed curve per face; works for graphs with bridges (a face walk
    that repeats an edge simply runs along both of its sides).
    ``edge_sides[e]`` gives the face indices of the two strands parallel to
    ``e`` (forward-dart side first); ``vertex_order[v]`` is the cyclic
    half-edge order, which is also the cyclic strand order at the vertex.
    """

    faces: tuple[Face, ...]
    edge_sides: Mapping[str, tuple[int, int]]
    vertex_order: Mapping[str, tuple[HalfEdge, ...]]

    @property
    def curve_count(self) -> int:
        return len(self.faces)


def ribbon_boundary(g: MultiGraph, rot: RotationSystem) -> RibbonBoundary:
    """Boundary curves of the ribbon neighborhood defined by the rotation."""
    faces = trace_faces(g, rot)
    face_of_dart: dict[Dart, int] = {}
    for i, face in enumerate(faces):
        for d in face.darts:
            face_of_dart[d] = i
    edge_sides = {
        e: (face_of_dart[(e, 0)], face_of_dart[(e, 1)]) for e in g.edges
    }
    return RibbonBoundary(tuple(faces), edge_sides, dict(rot.rotation))
