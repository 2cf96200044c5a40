"""Finite groups given by full multiplication tables, and isomorphism search."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .errors import SearchBudgetExceeded, ValidationError, Violation, default_budget


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group; ``mult[(a, b)]`` is the product ``ab``."""

    elements: tuple
    mult: Mapping
    identity: str
    inverse: Mapping

    def mul(self, a: str, b: str) -> str:
        return self.mult[(a, b)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def power(self, a: str, n: int) -> str:
        if n < 0:
            a, n = self.inverse[a], -n
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def element_order(self, a: str) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def order_profile(self) -> tuple:
        return tuple(sorted(Counter(self.element_order(a) for a in self.elements).items()))

    def generated(self, gens: Sequence[str]) -> frozenset:
        """The subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = self.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple:
        """Greedy generating set, preferring elements of large order."""
        ranked = sorted(self.elements, key=lambda a: (-self.element_order(a), a))
        gens: list = []
        span = frozenset({self.identity})
        for a in ranked:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = self.generated(gens)
        return tuple(gens)

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)


def check_group(elements, mult, identity, inverse) -> list:
    out = []
    els = list(elements)
    for a in els:
        for b in els:
            if mult.get((a, b)) not in elements:
                out.append(Violation("NotClosed", a, b))
    if out:
        return out
    for a in els:
        if mult[(identity, a)] != a or mult[(a, identity)] != a:
            out.append(Violation("MissingUnit", a))
        if mult[(a, inverse.get(a, identity))] != identity or mult[(inverse.get(a, identity), a)] != identity:
            out.append(Violation("BadInverse", a))
    for a in els:
        for b in els:
            ab = mult[(a, b)]
            for c in els:
                if mult[(ab, c)] != mult[(a, mult[(b, c)])]:
                    out.append(Violation("NonAssociative", a, b, c))
    return out


def make_group(elements, mult, identity, inverse) -> FiniteGroup:
    elements = tuple(sorted(elements))
    violations = check_group(elements, mult, identity, inverse)
    if violations:
        raise ValidationError("not a group", violations)
    return FiniteGroup(elements, dict(mult), identity, dict(inverse))


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("cyclic group order must be positive")
    els = [str(i) for i in range(k)]
    mult = {(str(i), str(j)): str((i + j) % k) for i in range(k) for j in range(k)}
    inverse = {str(i): str((-i) % k) for i in range(k)}
    return make_group(els, mult, "0", inverse)


def permutation_group(generators: Sequence[Mapping[str, str]], points: Sequence[str]) -> tuple:
    """Close a set of permutations of ``points`` under composition.

    Products follow right-action convention: ``ab`` means apply ``a`` first.
    Returns ``(group, perms)`` where ``perms[id]`` is the permutation of each
    element; ids are ``e`` and ``g1, g2, ...`` in breadth-first order.
    """
    pts = tuple(points)
    ident = tuple(pts)
    gens = [tuple(g[x] for x in pts) for g in generators]
    index = {x: i for i, x in enumerate(pts)}

    def then(a, b):
        return tuple(b[index[y]] for y in a)

    order = [ident]
    seen = {ident}
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        for g in gens:
            c = then(a, g)
            if c not in seen:
                seen.add(c)
                order.append(c)
    width = len(str(len(order)))
    names = {perm: ("e" if n == 0 else f"g{n:0{width}d}") for n, perm in enumerate(order)}
    mult = {(names[a], names[b]): names[then(a, b)] for a in order for b in order}
    inverse = {}
    for a in order:
        for b in order:
            if then(a, b) == ident:
                inverse[names[a]] = names[b]
    group = make_group(names.values(), mult, "e", inverse)
    perms = {names[a]: dict(zip(pts, a)) for a in order}
    return group, perms


def _extend(G: FiniteGroup, H: FiniteGroup, gens, images) -> Optional[dict]:
    """Extend a generator assignment along the Cayley graph, or None on conflict."""
    f = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s, t in zip(gens, images):
            y = G.mul(x, s)
            fy = H.mul(f[x], t)
            known = f.get(y)
            if known is None:
                f[y] = fy
                frontier.append(y)
            elif known != fy:
                return None
    return f


def find_group_isomorphism(G: FiniteGroup, H: FiniteGroup, budget: Optional[int] = None) -> Optional[dict]:
    """Backtracking over generator images; None when the groups differ.

    Raises SearchBudgetExceeded when more than ``budget`` assignments are tried.
    """
    budget = default_budget() if budget is None else budget
    if G.order != H.order or G.order_profile != H.order_profile:
        return None
    gens = G.generators
    orders = [G.element_order(s) for s in gens]
    candidates = [[t for t in H.elements if H.element_order(t) == n] for n in orders]
    nodes = 0
    images: list = []

    def search(i):
        nonlocal nodes
        if i == len(gens):
            f = _extend(G, H, gens, images)
            if f is not None and len(set(f.values())) == H.order:
                return f
            return None
        for t in candidates[i]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(budget, "group isomorphism search")
            images.append(t)
            if _extend(G, H, gens[: i + 1], images) is not None:
                found = search(i + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    return search(0)


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Mapping) -> bool:
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in G.elements for b in G.elements)
