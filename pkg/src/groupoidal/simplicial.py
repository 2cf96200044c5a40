"""Abstract simplicial complexes, their chain complexes, and group actions on them.

Simplices are tuples of vertex ids in ascending (string) order, which fixes
their orientation; each dimension lists its simplices lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BadAction, NotConnected, NotFreeRegular, SchemaError
from .groupoid import FiniteGroupoid, action, pid
from .groups import FiniteGroup, permutation_group
from .intlinalg import AbelianGroupDescriptor, IntMatrix, congruence_kernel, quotient_descriptor


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    facets: tuple

    @cached_property
    def simplices(self) -> tuple:
        """``simplices[n]`` lists the n-simplices in lexicographic order."""
        found: dict = {0: {(v,) for v in self.vertices}}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                found.setdefault(k - 1, set()).update(combinations(f, k))
        top = max(found) if found else -1
        return tuple(tuple(sorted(found.get(n, ()))) for n in range(top + 1))

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def count(self, n: int) -> int:
        return len(self.simplices[n]) if 0 <= n < len(self.simplices) else 0

    def simplices_of(self, n: int) -> tuple:
        return self.simplices[n] if 0 <= n < len(self.simplices) else ()

    @cached_property
    def index(self) -> dict:
        return {s: i for dim in self.simplices for i, s in enumerate(dim)}

    def boundary(self, n: int) -> IntMatrix:
        """Matrix of ``∂: C_n → C_(n-1)`` with the alternating-sign formula."""
        rows, cols = self.count(n - 1), self.count(n)
        M = IntMatrix(rows, cols)
        if n <= 0:
            return M
        for j, s in enumerate(self.simplices_of(n)):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                M.data[self.index[face]][j] += -1 if i % 2 else 1
        return M

    def chain_complex(self) -> "IntChainComplex":
        return IntChainComplex(
            tuple(self.count(n) for n in range(self.dimension + 1)),
            {n: self.boundary(n) for n in range(1, self.dimension + 1)},
        )

    def full_subcomplex(self, subset: Iterable[str]) -> "SimplicialComplex":
        keep = frozenset(subset)
        facets = set()
        for dim in self.simplices:
            for s in dim:
                if set(s) <= keep:
                    facets.add(s)
        return make_complex(sorted(keep), _maximal(facets))

    def components(self) -> list:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.simplices_of(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        blocks: dict = {}
        for v in self.vertices:
            blocks.setdefault(find(v), []).append(v)
        return [tuple(b) for _, b in sorted(blocks.items())]

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}


def _maximal(simplices) -> list:
    sets = sorted({tuple(sorted(s)) for s in simplices}, key=lambda s: (-len(s), s))
    out: list = []
    for s in sets:
        if not any(set(s) < set(t) for t in out):
            out.append(s)
    return sorted(out)


def make_complex(vertices: Sequence[str], facets: Iterable[Sequence[str]]) -> SimplicialComplex:
    verts = tuple(sorted(set(vertices)))
    if len(verts) != len(list(vertices)):
        raise SchemaError("duplicate vertex ids")
    vs = set(verts)
    cleaned = []
    for f in facets:
        f = tuple(sorted(set(f)))
        if not f:
            raise SchemaError("empty facet")
        if not set(f) <= vs:
            raise SchemaError("facet uses unknown vertices", facet=list(f))
        cleaned.append(f)
    return SimplicialComplex(verts, tuple(_maximal(cleaned)))


@dataclass(frozen=True)
class IntChainComplex:
    """Free chain groups ``ℤ^dims[n]`` and boundaries ``d[n]: C_n → C_(n-1)``."""

    dims: tuple
    d: Mapping

    def boundary(self, n: int) -> IntMatrix:
        rows = self.dims[n - 1] if 0 <= n - 1 < len(self.dims) else 0
        cols = self.dims[n] if 0 <= n < len(self.dims) else 0
        M = self.d.get(n)
        return M if M is not None else IntMatrix(rows, cols)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def check_square_zero(self) -> bool:
        return all((self.boundary(n) @ self.boundary(n + 1)).is_zero() for n in range(1, self.top + 1))

    def cycles(self, n: int, modulus: int = 0) -> IntMatrix:
        return congruence_kernel(self.boundary(n), modulus)

    def boundaries(self, n: int, modulus: int = 0) -> IntMatrix:
        B = self.boundary(n + 1)
        if modulus:
            B = B.hstack(IntMatrix.identity(B.rows) * modulus)
        return B

    def homology(self, n: int, modulus: int = 0) -> AbelianGroupDescriptor:
        """``H_n(C ⊗ ℤ/modulus)``; modulus 0 means integer coefficients."""
        return quotient_descriptor(self.cycles(n, modulus), self.boundaries(n, modulus))

    def dual(self) -> "IntChainComplex":
        """Cochain complex re-indexed as a chain complex: ``d*[n] = d[n]ᵀ`` going up."""
        return IntChainComplex(self.dims, {n: self.boundary(n).transpose() for n in range(1, self.top + 1)})

    def cohomology(self, n: int, modulus: int = 0) -> AbelianGroupDescriptor:
        """``Hⁿ(Hom(C, ℤ/modulus))``."""
        delta_n = self.boundary(n + 1).transpose()  # C^n -> C^(n+1)
        delta_prev = self.boundary(n).transpose()  # C^(n-1) -> C^n
        Z = congruence_kernel(delta_n, modulus)
        B = delta_prev
        if modulus:
            B = B.hstack(IntMatrix.identity(B.rows) * modulus)
        return quotient_descriptor(Z, B)


# group actions


@dataclass(frozen=True)
class SimplicialActionGroupoid:
    """A finite group acting on the right of a complex: ``x·g = action[g][x]``."""

    group: FiniteGroup
    complex: SimplicialComplex
    action: Mapping

    def act(self, x: str, g: str) -> str:
        return self.action[g][x]

    def act_simplex(self, s: tuple, g: str) -> tuple:
        return tuple(sorted(self.action[g][v] for v in s))

    def act_signed(self, s: tuple, g: str) -> tuple:
        """Image of an oriented simplex as ``(sign, sorted simplex)``."""
        image = [self.action[g][v] for v in s]
        order = sorted(range(len(image)), key=lambda i: image[i])
        sign = _permutation_sign(order)
        return sign, tuple(image[i] for i in order)

    @cached_property
    def vertex_groupoid(self) -> FiniteGroupoid:
        """The action groupoid on the vertex set."""
        act = {(x, g): self.action[g][x] for x in self.complex.vertices for g in self.group.elements}
        return action(self.group, self.complex.vertices, act)

    def restrict(self, subset: Iterable[str]) -> "SimplicialActionGroupoid":
        keep = frozenset(subset)
        sub = self.complex.full_subcomplex(keep)
        act = {g: {v: self.action[g][v] for v in sub.vertices} for g in self.group.elements}
        return SimplicialActionGroupoid(self.group, sub, act)

    def is_invariant(self, subset: Iterable[str]) -> bool:
        keep = frozenset(subset)
        return all(self.action[g][v] in keep for v in keep for g in self.group.elements)

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "generators": [
                {v: self.action[g][v] for v in self.complex.vertices} for g in self.group.generators
            ],
        }


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def check_action(group: FiniteGroup, K: SimplicialComplex, act: Mapping) -> None:
    verts = set(K.vertices)
    simplices = set(K.index)
    for g in group.elements:
        perm = act.get(g)
        if perm is None or set(perm) != verts or set(perm.values()) != verts:
            raise BadAction("not a vertex permutation", element=g)
        for s in simplices:
            if tuple(sorted(perm[v] for v in s)) not in simplices:
                raise BadAction("permutation is not simplicial", element=g, simplex=list(s))
    for v in K.vertices:
        if act[group.identity][v] != v:
            raise BadAction("identity moves a vertex", vertex=v)
        for g in group.elements:
            for h in group.elements:
                if act[group.mul(g, h)][v] != act[h][act[g][v]]:
                    raise BadAction("not a right action", elements=[g, h], vertex=v)


def check_free_regular(SG: SimplicialActionGroupoid) -> None:
    for g in SG.group.elements:
        if g == SG.group.identity:
            continue
        for v in SG.complex.vertices:
            if SG.act(v, g) == v:
                raise NotFreeRegular("action fixes a vertex", element=g, vertex=v)
        for dim in SG.complex.simplices:
            for s in dim:
                if SG.act_simplex(s, g) == s:
                    raise NotFreeRegular("action maps a simplex onto itself", element=g, simplex=list(s))


def make_action_groupoid(group: FiniteGroup, K: SimplicialComplex, act: Mapping) -> SimplicialActionGroupoid:
    act = {g: dict(act[g]) for g in group.elements}
    check_action(group, K, act)
    SG = SimplicialActionGroupoid(group, K, act)
    check_free_regular(SG)
    return SG


def from_generators(K: SimplicialComplex, generators: Sequence[Mapping[str, str]]) -> SimplicialActionGroupoid:
    """Group generated by vertex permutations acting on the right."""
    for perm in generators:
        if set(perm) != set(K.vertices) or set(perm.values()) != set(K.vertices):
            raise BadAction("generator is not a permutation of the vertices")
    group, perms = permutation_group(generators, K.vertices)
    return make_action_groupoid(group, K, perms)


def trivial_action(K: SimplicialComplex) -> SimplicialActionGroupoid:
    return from_generators(K, [])


def polygon(n: int) -> SimplicialComplex:
    verts = [str(i) for i in range(n)]
    return make_complex(verts, [(str(i), str((i + 1) % n)) for i in range(n)])


def rot(k: int, m: int) -> SimplicialActionGroupoid:
    """ℤ/k rotating the ``k·m``-gon by ``m`` steps."""
    n = k * m
    K = polygon(n)
    return from_generators(K, [{str(i): str((i + m) % n) for i in range(n)}])


def quotient_complex(SG: SimplicialActionGroupoid) -> tuple:
    """``K/Group`` built directly from vertex orbits.

    Returns ``(complex, vertex_orbit)``.  Raises NotFreeRegular when distinct
    simplex orbits collapse onto the same vertex set (subdivide first).
    """
    check_free_regular(SG)
    orbit_name = {}
    for v in SG.complex.vertices:
        if v not in orbit_name:
            members = {SG.act(v, g) for g in SG.group.elements}
            name = min(members)
            for x in members:
                orbit_name[x] = name
    images: dict = {}
    for dim in SG.complex.simplices:
        for s in dim:
            image = tuple(sorted({orbit_name[v] for v in s}))
            if len(image) != len(s):
                raise NotFreeRegular("simplex collapses in the quotient; subdivide first", simplex=list(s))
            orbit = min(SG.act_simplex(s, g) for g in SG.group.elements)
            if images.setdefault(image, orbit) != orbit:
                raise NotFreeRegular("two simplex orbits share a vertex set; subdivide first", simplex=list(s))
    Q = make_complex(sorted(set(orbit_name.values())), [tuple(sorted({orbit_name[v] for v in f})) for f in SG.complex.facets])
    return Q, orbit_name


def barycentric_subdivision(SG: SimplicialActionGroupoid) -> SimplicialActionGroupoid:
    """Subdivide the complex and carry the action along."""
    K = SG.complex
    name = {s: pid(*s) for dim in K.simplices for s in dim}
    facets = []

    def chains(s):
        if len(s) == 1:
            return [[s]]
        out = []
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            for c in chains(face):
                out.append(c + [s])
        return out

    for f in K.facets:
        for c in chains(f):
            facets.append(tuple(name[s] for s in c))
    K2 = make_complex(sorted(name.values()), facets)
    act = {
        g: {name[s]: name[SG.act_simplex(s, g)] for s in name}
        for g in SG.group.elements
    }
    return make_action_groupoid(SG.group, K2, act)


def require_connected(K: SimplicialComplex) -> None:
    if not K.is_connected():
        raise NotConnected("complex is not connected", components=len(K.components()))
