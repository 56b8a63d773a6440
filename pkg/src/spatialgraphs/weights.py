"""Cycle weights over Z_m and the balance predicates on them.

``Z_m`` is the integers mod m for m > 0, and the integers themselves for
m = 0.  A weight maps cycles of a graph to ``Z_m``; unlisted cycles read
as 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import WeightError
from .graphs import (
    Cycle,
    MultiGraph,
    cycle_class_mod2,
    cycles_through_adjacent_pair,
    cycles_through_edge,
    enumerate_cycles,
    oriented_cycle_class,
    z2_sum,
)


def _reduce(value: int, modulus: int) -> int:
    return value % modulus if modulus > 0 else value


@dataclass(frozen=True)
class Weight:
    """A weight on the cycles of a graph over Z_m (m = 0 meaning Z)."""

    modulus: int
    values: Mapping[tuple[str, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 0:
            raise WeightError("modulus must be >= 0")
        cleaned = {}
        for key, val in self.values.items():
            cycle = key.edges if isinstance(key, Cycle) else tuple(sorted(key))
            r = _reduce(val, self.modulus)
            if r:
                cleaned[cycle] = r
        object.__setattr__(self, "values", cleaned)

    def __call__(self, cycle: Cycle | Iterable[str]) -> int:
        key = cycle.edges if isinstance(cycle, Cycle) else tuple(sorted(cycle))
        return self.values.get(key, 0)

    def support(self) -> tuple[Cycle, ...]:
        return tuple(sorted(Cycle(k) for k in self.values))

    def validate_on(self, g: MultiGraph) -> None:
        """Check that every keyed cycle really is a cycle of ``g``."""
        cycles = set(enumerate_cycles(g))
        for key in self.values:
            if Cycle(key) not in cycles:
                raise WeightError(f"{key} is not a cycle of the graph")

    def negated(self) -> "Weight":
        return Weight(self.modulus, {k: -v for k, v in self.values.items()})

    def plus(self, other: "Weight") -> "Weight":
        if other.modulus != self.modulus:
            raise WeightError("modulus mismatch")
        keys = set(self.values) | set(other.values)
        return Weight(self.modulus, {k: self.values.get(k, 0) + other.values.get(k, 0) for k in keys})

    def mod2_reduction(self) -> "Weight":
        return Weight(2, dict(self.values))

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "values": [{"cycle": list(k), "w": v} for k, v in sorted(self.values.items())],
        }

    @staticmethod
    def from_json(data: Mapping) -> "Weight":
        try:
            values = {tuple(sorted(item["cycle"])): int(item["w"]) for item in data["values"]}
            return Weight(int(data["modulus"]), values)
        except (KeyError, TypeError, ValueError) as exc:
            raise WeightError(f"malformed weight JSON: {exc}") from exc

    @staticmethod
    def loads(text: str) -> "Weight":
        return Weight.from_json(json.loads(text))


def all_ones_weight(g: MultiGraph, modulus: int = 2) -> Weight:
    return Weight(modulus, {c.edges: 1 for c in enumerate_cycles(g)})


# -- balance predicates -----------------------------------------------------


def is_weakly_balanced_on_edge(g: MultiGraph, w: Weight, e: str) -> bool:
    """True iff the sum of ``w`` over the cycles through ``e`` vanishes in Z_m."""
    total = sum(w(c) for c in cycles_through_edge(g, e))
    return _reduce(total, w.modulus) == 0


def is_weakly_balanced_on_pair(g: MultiGraph, w: Weight, e1: str, e2: str) -> bool:
    """True iff the sum over cycles through both adjacent edges vanishes."""
    total = sum(w(c) for c in cycles_through_adjacent_pair(g, e1, e2))
    return _reduce(total, w.modulus) == 0


def is_weakly_balanced_everywhere(g: MultiGraph, w: Weight) -> bool:
    return all(is_weakly_balanced_on_edge(g, w, e) for e in g.edges)


def adjacent_pairs(g: MultiGraph) -> list[tuple[str, str]]:
    ids = sorted(g.edges)
    return [
        (e1, e2)
        for i, e1 in enumerate(ids)
        for e2 in ids[i + 1 :]
        if g.adjacent(e1, e2)
    ]


def is_weakly_balanced_on_all_pairs(g: MultiGraph, w: Weight) -> bool:
    return all(is_weakly_balanced_on_pair(g, w, e1, e2) for e1, e2 in adjacent_pairs(g))


def is_totally_balanced(g: MultiGraph, w: Weight) -> bool:
    """True iff the Z2 edge-vector sum of all weighted cycles is zero.

    Only defined for weights over Z2.
    """
    if w.modulus != 2:
        raise WeightError("totally balanced is defined for weights over Z2")
    vectors = [cycle_class_mod2(g, c) for c in enumerate_cycles(g) if w(c) % 2]
    return z2_sum(vectors) == frozenset()


def is_balanced_on_edge_taniyama(g: MultiGraph, w: Weight, e: str) -> bool:
    """Signed variant: the oriented edge-vector sum over cycles through ``e``.

    Each cycle is traversed in the direction induced by ``e``; the sum must
    vanish coordinatewise in Z_m.  Empty sums (bridges) are balanced.
    """
    g.edge_ends(e)
    total: dict[str, int] = {}
    for c in cycles_through_edge(g, e):
        vec = oriented_cycle_class(g, c, (e, 1), w.modulus)
        for edge, sgn in vec.items():
            total[edge] = total.get(edge, 0) + w(c) * sgn
    return all(_reduce(v, w.modulus) == 0 for v in total.values())


# -- theorem hypothesis report ----------------------------------------------


@dataclass(frozen=True)
class TheoremReport:
    """Which invariance statements apply to a pair of weighted graphs.

    ``edge_integer``   : both weights weakly balanced on every edge.
    ``vertex_integer`` : both weights weakly balanced on every adjacent pair.
    ``edge_mod2``      : modulus 2 and at least one weight totally balanced.
    ``vertex_mod2``    : modulus 2 and at least one weight totally balanced
                         and pair-balanced on its own graph.
    """

    edge_integer: bool
    vertex_integer: bool
    edge_mod2: bool
    vertex_mod2: bool

    def applies_to_edge_homotopy(self) -> bool:
        return self.edge_integer or self.edge_mod2

    def applies_to_vertex_homotopy(self) -> bool:
        return self.vertex_integer or self.vertex_mod2

    def statements(self) -> tuple[str, ...]:
        names = []
        if self.edge_integer:
            names.append("edge-homotopy (weakly balanced weights)")
        if self.vertex_integer:
            names.append("vertex-homotopy (pair-balanced weights)")
        if self.edge_mod2:
            names.append("edge-homotopy mod 2 (totally balanced weight)")
        if self.vertex_mod2:
            names.append("vertex-homotopy mod 2 (totally + pair-balanced weight)")
        return tuple(names)


def check_theorem_hypotheses(
    g1: MultiGraph, g2: MultiGraph, w1: Weight, w2: Weight
) -> TheoremReport:
    if w1.modulus != w2.modulus:
        raise WeightError("the two weights must share a modulus")
    edge_int = is_weakly_balanced_everywhere(g1, w1) and is_weakly_balanced_everywhere(g2, w2)
    vert_int = is_weakly_balanced_on_all_pairs(g1, w1) and is_weakly_balanced_on_all_pairs(g2, w2)
    edge_m2 = False
    vert_m2 = False
    if w1.modulus == 2:
        tb1 = is_totally_balanced(g1, w1)
        tb2 = is_totally_balanced(g2, w2)
        edge_m2 = tb1 or tb2
        vert_m2 = (tb1 and is_weakly_balanced_on_all_pairs(g1, w1)) or (
            tb2 and is_weakly_balanced_on_all_pairs(g2, w2)
        )
    return TheoremReport(edge_int, vert_int, edge_m2, vert_m2)


# -- random balanced weights (for property tests) ----------------------------


def _gf2_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Kernel basis of a matrix over GF(2); rows are 0/1 lists."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                mat[i] = [(a ^ b) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, p in enumerate(pivots):
            if mat[i][f]:
                vec[p] = 1
        basis.append(vec)
    return basis


def _rational_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer kernel basis (denominators cleared) of an integer matrix."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -mat[i][f]
        denom = 1
        for x in vec:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        basis.append([int(x * denom) for x in vec])
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _edge_constraint_matrix(g: MultiGraph, cycles: tuple[Cycle, ...]) -> list[list[int]]:
    """Rows: one per edge; columns: cycles; entry 1 if the cycle uses the edge."""
    return [[1 if e in c else 0 for c in cycles] for e in sorted(g.edges)]


def _pair_constraint_matrix(g: MultiGraph, cycles: tuple[Cycle, ...]) -> list[list[int]]:
    return [
        [1 if (e1 in c and e2 in c) else 0 for c in cycles]
        for e1, e2 in adjacent_pairs(g)
    ]


def _indicator_constraint_matrix(g: MultiGraph, cycles: tuple[Cycle, ...]) -> list[list[int]]:
    """Rows: one per edge; entry = cycle's mod-2 indicator at that edge."""
    return [[1 if e in c else 0 for c in cycles] for e in sorted(g.edges)]


def random_totally_balanced_weight(g: MultiGraph, rng: random.Random) -> Weight:
    """Uniform sample from the kernel of the Z2 indicator-sum map."""
    cycles = enumerate_cycles(g)
    basis = _gf2_kernel(_indicator_constraint_matrix(g, cycles), len(cycles))
    coeffs = [rng.randrange(2) for _ in basis]
    vals = [0] * len(cycles)
    for coef, vec in zip(coeffs, basis):
        if coef:
            vals = [(a ^ b) for a, b in zip(vals, vec)]
    return Weight(2, {c.edges: v for c, v in zip(cycles, vals) if v})


def random_edge_balanced_weight(
    g: MultiGraph, rng: random.Random, modulus: int = 0, bound: int = 2
) -> Weight:
    """Random weight weakly balanced on every edge (integer kernel sample)."""
    cycles = enumerate_cycles(g)
    basis = _rational_kernel(_edge_constraint_matrix(g, cycles), len(cycles))
    vals = [0] * len(cycles)
    for vec in basis:
        coef = rng.randint(-bound, bound)
        vals = [a + coef * b for a, b in zip(vals, vec)]
    return Weight(modulus, {c.edges: v for c, v in zip(cycles, vals) if v})


def random_pair_balanced_weight(
    g: MultiGraph, rng: random.Random, modulus: int = 0, bound: int = 2
) -> Weight:
    """Random weight weakly balanced on every adjacent edge pair."""
    cycles = enumerate_cycles(g)
    basis = _rational_kernel(_pair_constraint_matrix(g, cycles), len(cycles))
    vals = [0] * len(cycles)
    for vec in basis:
        coef = rng.randint(-bound, bound)
        vals = [a + coef * b for a, b in zip(vals, vec)]
    return Weight(modulus, {c.edges: v for c, v in zip(cycles, vals) if v})
