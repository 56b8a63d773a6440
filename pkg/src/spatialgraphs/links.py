"""Oriented link diagrams in Gauss-passage form and the Conway polynomial.

A ``LinkDiagram`` stores each component as the cyclic sequence of its
crossing passages, each passage marked over or under, plus one sign per
crossing.  That is exactly the data the skein recursion needs; planar
realizability is the supplier's responsibility.

The Conway polynomial is computed by make-descending resolution: walk the
components in order from their basepoints, switch the first crossing met
as under before its over passage (spawning a z-weighted smoothing branch),
and recurse.  Descending diagrams are unlinks: a single descending
component has polynomial 1, several give 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    CrossingLimitExceeded,
    DiagramError,
    NotAlgebraicallySplit,
)

Passage = tuple[str, str]  # (crossing id, "o" | "u")

DEFAULT_CROSSING_LIMIT = 24


@dataclass(frozen=True)
class ConwayPolynomial:
    """Exact integer polynomial in z, stored sparsely by degree."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (degree, coefficient), coeff != 0

    @staticmethod
    def of(mapping: Mapping[int, int]) -> "ConwayPolynomial":
        return ConwayPolynomial(tuple(sorted((d, c) for d, c in mapping.items() if c)))

    @staticmethod
    def zero() -> "ConwayPolynomial":
        return ConwayPolynomial(())

    @staticmethod
    def one() -> "ConwayPolynomial":
        return ConwayPolynomial(((0, 1),))

    def coefficient(self, degree: int) -> int:
        for d, c in self.coeffs:
            if d == degree:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else -1

    def __add__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        out = dict(self.coeffs)
        for d, c in other.coeffs:
            out[d] = out.get(d, 0) + c
        return ConwayPolynomial.of(out)

    def __sub__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        out = dict(self.coeffs)
        for d, c in other.coeffs:
            out[d] = out.get(d, 0) - c
        return ConwayPolynomial.of(out)

    def shifted(self, k: int = 1) -> "ConwayPolynomial":
        """Multiply by z^k."""
        return ConwayPolynomial(tuple((d + k, c) for d, c in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in self.coeffs:
            if d == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                sign = "-" if c < 0 else ""
                term = f"{sign}{mag}z" + (f"^{d}" if d > 1 else "")
                if parts and c > 0:
                    term = term
            parts.append(term)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"coeffs": {str(d): c for d, c in self.coeffs}}

    @staticmethod
    def from_json(data: Mapping) -> "ConwayPolynomial":
        return ConwayPolynomial.of({int(d): int(c) for d, c in data["coeffs"].items()})


class LinkDiagram:
    """An oriented link diagram as components of crossing passages."""

    def __init__(
        self,
        components: Iterable[Iterable[Passage]],
        signs: Mapping[str, int],
    ):
        self.components: tuple[tuple[Passage, ...], ...] = tuple(
            tuple(comp) for comp in components
        )
        self.signs: dict[str, int] = dict(signs)
        counts: dict[str, list[int]] = {}
        for comp in self.components:
            for cid, role in comp:
                if role not in ("o", "u"):
                    raise DiagramError(f"bad passage role {role!r}")
                slot = counts.setdefault(cid, [0, 0])
                slot[0 if role == "o" else 1] += 1
        for cid, (over, under) in counts.items():
            if (over, under) != (1, 1):
                raise DiagramError(
                    f"crossing {cid!r} has {over} over / {under} under passages"
                )
            if self.signs.get(cid) not in (1, -1):
                raise DiagramError(f"crossing {cid!r} missing a +/-1 sign")
        extra = set(self.signs) - set(counts)
        if extra:
            raise DiagramError(f"signs for unknown crossings: {sorted(extra)}")

    # -- structure ------------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    def component_of(self, cid: str, role: str) -> tuple[int, int]:
        """(component index, position) of the given passage."""
        for i, comp in enumerate(self.components):
            for pos, passage in enumerate(comp):
                if passage == (cid, role):
                    return i, pos
        raise DiagramError(f"no passage ({cid!r}, {role!r})")

    def crossing_sign(self, cid: str) -> int:
        try:
            return self.signs[cid]
        except KeyError:
            raise DiagramError(f"unknown crossing {cid!r}") from None

    def is_self_crossing(self, cid: str) -> bool:
        i, _ = self.component_of(cid, "o")
        j, _ = self.component_of(cid, "u")
        return i == j

    # -- moves ------------------------------------------------------------

    def crossing_switch(self, cid: str) -> "LinkDiagram":
        """Exchange over and under at one crossing; its sign negates."""
        self.crossing_sign(cid)
        comps = tuple(
            tuple(
                (c, ("u" if r == "o" else "o")) if c == cid else (c, r)
                for c, r in comp
            )
            for comp in self.components
        )
        signs = dict(self.signs)
        signs[cid] = -signs[cid]
        return LinkDiagram(comps, signs)

    def oriented_smoothing(self, cid: str) -> "LinkDiagram":
        """Orientation-respecting smoothing at one crossing.

        A self-crossing split raises the component count by one; smoothing
        a crossing between two components merges them.
        """
        comps, signs, _ = self._smooth(cid)
        return LinkDiagram(comps, signs)

    def _smooth(self, cid: str):
        i, a = self.component_of(cid, "o")
        j, b = self.component_of(cid, "u")
        signs = {c: s for c, s in self.signs.items() if c != cid}
        comps = list(self.components)
        if i == j:
            comp = comps[i]
            n = len(comp)

            def seg(start: int, stop: int) -> tuple[Passage, ...]:
                out = []
                k = start % n
                while k != stop % n:
                    out.append(comp[k])
                    k = (k + 1) % n
                return tuple(out)

            piece1 = seg(a + 1, b)  # under-in -> over-out side
            piece2 = seg(b + 1, a)  # over-in -> under-out side
            comps[i : i + 1] = [piece1, piece2]
            return tuple(comps), signs, ("split", i, i + 1)
        ci, cj = comps[i], comps[j]
        merged = (
            ci[a + 1 :]
            + ci[:a]
            + cj[b + 1 :]
            + cj[:b]
        )
        lo, hi = sorted((i, j))
        comps[lo] = tuple(merged)
        del comps[hi]
        return tuple(comps), signs, ("merge", lo)

    def reverse_component(self, index: int) -> "LinkDiagram":
        """Reverse one component's orientation; signs of crossings met once
        by that component flip."""
        comps = list(self.components)
        comps[index] = tuple(reversed(comps[index]))
        signs = dict(self.signs)
        ids_here = [cid for cid, _ in self.components[index]]
        for cid in set(ids_here):
            if ids_here.count(cid) == 1:
                signs[cid] = -signs[cid]
        return LinkDiagram(comps, signs)

    def permuted(self, order: Iterable[int]) -> "LinkDiagram":
        order = list(order)
        return LinkDiagram([self.components[i] for i in order], self.signs)

    def rotated(self, index: int, offset: int) -> "LinkDiagram":
        comps = list(self.components)
        comp = comps[index]
        if comp:
            k = offset % len(comp)
            comps[index] = comp[k:] + comp[:k]
        return LinkDiagram(comps, self.signs)

    def relabeled(self) -> "LinkDiagram":
        """Relabel crossings by first-encounter order (canonical-ish form)."""
        mapping: dict[str, str] = {}
        for comp in self.components:
            for cid, _ in comp:
                if cid not in mapping:
                    mapping[cid] = f"x{len(mapping)}"
        comps = tuple(tuple((mapping[c], r) for c, r in comp) for comp in self.components)
        signs = {mapping[c]: s for c, s in self.signs.items()}
        return LinkDiagram(comps, signs)

    def _key(self):
        mapping: dict[str, int] = {}
        comps = []
        for comp in self.components:
            out = []
            for cid, role in comp:
                if cid not in mapping:
                    mapping[cid] = len(mapping)
                out.append((mapping[cid], role))
            comps.append(tuple(out))
        signs = tuple(s for c, s in sorted(self.signs.items(), key=lambda kv: mapping[kv[0]]))
        return tuple(comps), signs

    def __repr__(self) -> str:
        return f"LinkDiagram({self.n_components} components, {self.n_crossings} crossings)"


# -- linking numbers ---------------------------------------------------------


def _passage_components(L: LinkDiagram) -> dict[str, tuple[int, int]]:
    """crossing id -> (component of over passage, component of under passage)."""
    over: dict[str, int] = {}
    under: dict[str, int] = {}
    for i, comp in enumerate(L.components):
        for cid, role in comp:
            (over if role == "o" else under)[cid] = i
    return {cid: (over[cid], under[cid]) for cid in over}


def linking_number(L: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j."""
    if i == j:
        raise DiagramError("linking number needs two distinct components")
    for idx in (i, j):
        if not 0 <= idx < L.n_components:
            raise DiagramError(f"no component {idx}")
    total = 0
    for cid, (io, iu) in _passage_components(L).items():
        if {io, iu} == {i, j}:
            total += L.signs[cid]
    if total % 2:
        raise DiagramError("odd inter-component signed sum: diagram is corrupt")
    return total // 2


def linking_matrix(L: LinkDiagram) -> list[list[int]]:
    n = L.n_components
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            mat[i][j] = mat[j][i] = linking_number(L, i, j)
    return mat


# -- Conway polynomial -------------------------------------------------------


def _crossing_groups(L: LinkDiagram) -> int:
    """Number of groups of components connected through shared crossings."""
    n = L.n_components
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for io, iu in _passage_components(L).values():
        a, b = find(io), find(iu)
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(n)})


def _first_violation(L: LinkDiagram):
    """First passage met as under before its over, in walk order; or None."""
    seen_over: set[str] = set()
    for i, comp in enumerate(L.components):
        for cid, role in comp:
            if role == "o":
                seen_over.add(cid)
            elif cid not in seen_over:
                return cid
    return None


def conway(
    L: LinkDiagram,
    crossing_limit: int = DEFAULT_CROSSING_LIMIT,
    memoize: bool = False,
    max_degree: int | None = None,
) -> ConwayPolynomial:
    """The Conway polynomial of the diagram, exactly.

    ``max_degree`` truncates the answer above that degree using the exact
    lower bound deg >= (components - 1); coefficients up to the bound are
    unaffected.  ``memoize`` caches sub-diagrams by first-encounter code.
    """
    if L.n_crossings > crossing_limit:
        raise CrossingLimitExceeded(
            f"{L.n_crossings} crossings exceeds the limit {crossing_limit}"
        )
    cache: dict | None = {} if memoize else None

    def resolve(d: LinkDiagram, budget: int | None) -> ConwayPolynomial:
        n = d.n_components
        if n == 0:
            return ConwayPolynomial.zero()
        if budget is not None and n - 1 > budget:
            return ConwayPolynomial.zero()
        if n > 1 and _crossing_groups(d) > 1:
            return ConwayPolynomial.zero()
        key = None
        if cache is not None:
            key = (d._key(), budget)
            hit = cache.get(key)
            if hit is not None:
                return hit
        cid = _first_violation(d)
        if cid is None:
            result = ConwayPolynomial.one() if n == 1 else ConwayPolynomial.zero()
        else:
            sign = d.signs[cid]
            switched = d.crossing_switch(cid)
            smoothed = d.oriented_smoothing(cid)
            sub_budget = None if budget is None else budget - 1
            smooth_part = resolve(smoothed, sub_budget).shifted(1)
            if sign > 0:
                result = resolve(switched, budget) + smooth_part
            else:
                result = resolve(switched, budget) - smooth_part
        if cache is not None:
            cache[key] = result
        return result

    out = resolve(L, max_degree)
    # parity / low-degree guard: coefficients live in degrees >= n-1 with
    # the parity of n-1
    n = L.n_components
    for d, c in out.coeffs:
        if d < n - 1 or (d - (n - 1)) % 2:
            raise DiagramError("engine produced an impossible coefficient")
    return out


def a3(
    L: LinkDiagram,
    crossing_limit: int = DEFAULT_CROSSING_LIMIT,
    memoize: bool = True,
) -> int:
    """Third Conway coefficient of a 2-component link diagram."""
    if L.n_components != 2:
        raise DiagramError("a3 is defined for 2-component links")
    return conway(L, crossing_limit, memoize=memoize, max_degree=3).coefficient(3)


def sato_levine(
    L: LinkDiagram,
    crossing_limit: int = DEFAULT_CROSSING_LIMIT,
) -> int:
    """The Sato-Levine invariant: a3 of an algebraically split 2-component link."""
    if L.n_components != 2:
        raise DiagramError("Sato-Levine invariant needs a 2-component link")
    lk = linking_number(L, 0, 1)
    if lk != 0:
        raise NotAlgebraicallySplit(f"linking number is {lk}, not 0")
    return a3(L, crossing_limit)


@dataclass(frozen=True)
class ThreeComponentIdentity:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def a2_three_component_identity(
    L: LinkDiagram, crossing_limit: int = DEFAULT_CROSSING_LIMIT
) -> ThreeComponentIdentity:
    """z^2 coefficient of a 3-component link vs the pairwise linking numbers."""
    if L.n_components != 3:
        raise DiagramError("identity applies to 3-component links")
    lhs = conway(L, crossing_limit, memoize=True, max_degree=2).coefficient(2)
    l12 = linking_number(L, 0, 1)
    l13 = linking_number(L, 0, 2)
    l23 = linking_number(L, 1, 2)
    rhs = l12 * l23 + l23 * l13 + l13 * l12
    return ThreeComponentIdentity(lhs, rhs)


@dataclass(frozen=True)
class SkeinLemmaReport:
    """Outcome of checking the self-crossing skein identity at one site."""

    crossing: str
    a3_plus: int
    a3_minus: int
    lk_j1_k: int
    lk_j2_k: int

    @property
    def difference_matches_j1(self) -> bool:
        return self.a3_plus - self.a3_minus == -self.lk_j1_k**2

    @property
    def difference_matches_j2(self) -> bool:
        return self.a3_plus - self.a3_minus == -self.lk_j2_k**2

    @property
    def linking_sum_vanishes(self) -> bool:
        return self.lk_j1_k + self.lk_j2_k == 0

    @property
    def holds(self) -> bool:
        return (
            self.difference_matches_j1
            and self.difference_matches_j2
            and self.linking_sum_vanishes
        )


def verify_skein_lemma(
    L: LinkDiagram, cid: str, crossing_limit: int = DEFAULT_CROSSING_LIMIT
) -> SkeinLemmaReport:
    """Check a3(L+) - a3(L-) = -lk(J1,K)^2 = -lk(J2,K)^2 at a self-crossing.

    ``L`` must be a 2-component diagram with linking number zero and ``cid``
    one of its self-crossings; the smoothing there yields J1 u J2 u K.
    """
    if L.n_components != 2:
        raise DiagramError("the lemma concerns 2-component links")
    if not L.is_self_crossing(cid):
        raise DiagramError(f"{cid!r} is not a self-crossing")
    if linking_number(L, 0, 1) != 0:
        raise NotAlgebraicallySplit("lemma requires linking number 0")
    if L.signs[cid] > 0:
        plus, minus = L, L.crossing_switch(cid)
    else:
        plus, minus = L.crossing_switch(cid), L
    comps, signs, info = L._smooth(cid)
    smoothed = LinkDiagram(comps, signs)
    kind, j1_index, j2_index = info[0], info[1], info[2]
    assert kind == "split"
    k_index = next(i for i in range(3) if i not in (j1_index, j2_index))
    return SkeinLemmaReport(
        crossing=cid,
        a3_plus=a3(plus, crossing_limit),
        a3_minus=a3(minus, crossing_limit),
        lk_j1_k=linking_number(smoothed, j1_index, k_index),
        lk_j2_k=linking_number(smoothed, j2_index, k_index),
    )


# -- serialization helpers ---------------------------------------------------


def link_to_json(L: LinkDiagram) -> dict:
    return {
        "components": [[[c, r] for c, r in comp] for comp in L.components],
        "signs": dict(L.signs),
    }


def link_from_json(data: Mapping) -> LinkDiagram:
    comps = [[(c, r) for c, r in comp] for comp in data["components"]]
    return LinkDiagram(comps, {k: int(v) for k, v in data["signs"].items()})


def link_loads(text: str) -> LinkDiagram:
    return link_from_json(json.loads(text))
