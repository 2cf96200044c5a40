"""Finite topological spaces stored as specialization preorders.

``x <= y`` means every open set containing ``x`` also contains ``y``; open
sets are the up-closed subsets and continuous maps are the monotone ones.
The discrete topology is the empty relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional


def _closure(points, pairs) -> frozenset:
    up = {x: set() for x in points}
    for x, y in pairs:
        if x != y:
            up[x].add(y)
    changed = True
    while changed:
        changed = False
        for x in points:
            extra = set()
            for y in up[x]:
                extra |= up[y]
            extra.discard(x)
            if not extra <= up[x]:
                up[x] |= extra
                changed = True
    return frozenset((x, y) for x in points for y in up[x])


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    order: frozenset  # strict pairs (x, y) with x <= y, transitively closed

    @classmethod
    def discrete(cls, points: Iterable[str]) -> "FiniteSpace":
        return cls(tuple(sorted(points)), frozenset())

    @classmethod
    def from_relation(cls, points: Iterable[str], pairs: Iterable) -> "FiniteSpace":
        pts = tuple(sorted(points))
        return cls(pts, _closure(pts, pairs))

    @classmethod
    def from_opens(cls, points: Iterable[str], opens: Iterable[Iterable[str]]) -> "FiniteSpace":
        """Topology generated by the given subsets."""
        pts = tuple(sorted(points))
        sets = [frozenset(o) for o in opens]
        pairs = []
        for x in pts:
            nbhd = set(pts)
            for o in sets:
                if x in o:
                    nbhd &= o
            pairs.extend((x, y) for y in nbhd if y != x)
        return cls(pts, _closure(pts, pairs))

    @property
    def is_discrete(self) -> bool:
        return not self.order

    def leq(self, x: str, y: str) -> bool:
        return x == y or (x, y) in self.order

    @cached_property
    def _up(self) -> dict:
        up = {x: {x} for x in self.points}
        for x, y in self.order:
            up[x].add(y)
        return {x: frozenset(v) for x, v in up.items()}

    def minimal_open(self, x: str) -> frozenset:
        return self._up[x]

    def is_open(self, subset: Iterable[str]) -> bool:
        s = frozenset(subset)
        return all(self._up[x] <= s for x in s)

    def subspace(self, subset: Iterable[str]) -> "FiniteSpace":
        s = frozenset(subset)
        return FiniteSpace(tuple(x for x in self.points if x in s), frozenset(p for p in self.order if p[0] in s and p[1] in s))

    def components(self, subset: Optional[Iterable[str]] = None) -> list:
        """Connected components of a subspace, ordered by least member."""
        s = set(self.points if subset is None else subset)
        nbrs = {x: set() for x in s}
        for x, y in self.order:
            if x in s and y in s:
                nbrs[x].add(y)
                nbrs[y].add(x)
        seen: set = set()
        out = []
        for x in sorted(s):
            if x in seen:
                continue
            comp = {x}
            frontier = [x]
            while frontier:
                z = frontier.pop()
                for y in nbrs[z]:
                    if y not in comp:
                        comp.add(y)
                        frontier.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_monotone(self, f, target: "FiniteSpace", domain: Optional[Iterable[str]] = None) -> bool:
        s = None if domain is None else frozenset(domain)
        return all(
            target.leq(f[x], f[y]) for x, y in self.order if s is None or (x in s and y in s)
        )

    def to_json(self) -> dict:
        return {"points": list(self.points), "order": sorted([list(p) for p in self.order])}


def pseudocircle() -> FiniteSpace:
    """Four points ``a, b`` (open) and ``c, d`` (closed); weakly a circle."""
    return FiniteSpace.from_relation("abcd", [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")])
