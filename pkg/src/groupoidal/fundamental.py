"""Fundamental groups: vertex groups, edge-path presentations, coset enumeration.

Words are tuples of signed 1-based generator indices: ``2`` is the second
generator and ``-2`` its inverse.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import NoSuchObject, SchemaError
from .groupoid import FiniteGroupoid, GroupoidFunctor, pid, vertex_group
from .groups import FiniteGroup, find_group_isomorphism, is_homomorphism
from .intlinalg import AbelianGroupDescriptor, IntMatrix, quotient_descriptor
from .simplicial import (
    SimplicialActionGroupoid,
    SimplicialComplex,
    check_free_regular,
    quotient_complex,
    require_connected,
)

DEFAULT_COSET_BOUND = 10_000


def free_reduce(word: Sequence[int]) -> tuple:
    out: list = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > n for x in r):
                raise SchemaError("relator uses an unknown generator", relator=list(r))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupPresentation":
        try:
            return cls(tuple(data["generators"]), tuple(tuple(int(x) for x in r) for r in data["relators"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad presentation: {exc}") from exc


def abelianization(P: GroupPresentation) -> AbelianGroupDescriptor:
    """``ℤ^gens`` modulo the exponent-sum vectors of the relators."""
    n = len(P.generators)
    cols = []
    for r in P.relators:
        v = [0] * n
        for x in r:
            v[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(v)
    return quotient_descriptor(IntMatrix.identity(n), IntMatrix.from_columns(cols, n))


# discrete tier


def pi1_discrete(G: FiniteGroupoid, b: str) -> FiniteGroup:
    """Loops in a discrete space are constant, so π₁ is the vertex group at ``b``."""
    if b not in G.object_set:
        raise NoSuchObject("unknown object", object=b)
    return vertex_group(G, b)


def induced_vertex_map(phi: GroupoidFunctor, b: str) -> dict:
    return {g: phi.mor_map[g] for g in phi.source.hom(b, b)}


@dataclass(frozen=True)
class VertexIsoRecord:
    base: str
    induced_is_isomorphism: bool
    abstract_isomorphism: bool

    @property
    def holds(self) -> bool:
        return self.induced_is_isomorphism and self.abstract_isomorphism


def vertex_iso_check(phi: GroupoidFunctor, budget: Optional[int] = None) -> list:
    """For each object ``b``, whether ``phi`` maps π₁(b) isomorphically onto π₁(phi b).

    The induced map and an independent isomorphism search are both reported.
    """
    out = []
    for b in phi.source.objects:
        G = pi1_discrete(phi.source, b)
        H = pi1_discrete(phi.target, phi.obj_map[b])
        f = induced_vertex_map(phi, b)
        induced = is_homomorphism(G, H, f) and len(set(f.values())) == H.order == G.order
        abstract = find_group_isomorphism(G, H, budget) is not None
        out.append(VertexIsoRecord(b, induced, abstract))
    return out


# edge-path groups


@dataclass(frozen=True)
class EdgePathPresentation:
    """Spanning-tree presentation of the edge-path group of a complex."""

    complex: SimplicialComplex
    base: str
    parent: dict  # vertex -> tree parent (base maps to None)
    generator_edges: tuple  # ascending non-tree edges
    presentation: GroupPresentation

    def letter(self, u: str, v: str) -> Optional[int]:
        """Signed generator for traversing ``u → v``; None on tree edges."""
        edge = (u, v) if u < v else (v, u)
        try:
            i = self.generator_edges.index(edge) + 1
        except ValueError:
            return None
        return i if edge == (u, v) else -i

    def word_of_path(self, path: Sequence[str]) -> tuple:
        word = []
        for u, v in zip(path, path[1:]):
            x = self.letter(u, v)
            if x is not None:
                word.append(x)
        return free_reduce(word)

    def tree_path(self, v: str) -> list:
        """Vertices from the base to ``v`` along the tree."""
        out = [v]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out[::-1]

    def generator_loop(self, i: int) -> list:
        u, v = self.generator_edges[i - 1]
        return self.tree_path(u) + self.tree_path(v)[::-1]

    def loop_of_word(self, word: Sequence[int]) -> list:
        path = [self.base]
        for x in word:
            loop = self.generator_loop(abs(x))
            if x < 0:
                loop = loop[::-1]
            path += loop[1:]
        return path


def edge_path_presentation(K: SimplicialComplex, base: Optional[str] = None) -> EdgePathPresentation:
    require_connected(K)
    base = K.vertices[0] if base is None else base
    if base not in K.vertices:
        raise NoSuchObject("unknown vertex", vertex=base)
    nbrs: dict = {v: [] for v in K.vertices}
    for u, v in K.simplices_of(1) if K.dimension >= 1 else ():
        nbrs[u].append(v)
        nbrs[v].append(u)
    parent = {base: None}
    queue = deque([base])
    tree = set()
    while queue:
        u = queue.popleft()
        for v in sorted(nbrs[u]):
            if v not in parent:
                parent[v] = u
                tree.add((u, v) if u < v else (v, u))
                queue.append(v)
    edges = tuple(e for e in (K.simplices_of(1) if K.dimension >= 1 else ()) if e not in tree)
    gens = tuple(pid(*e) for e in edges)
    partial = EdgePathPresentation(K, base, parent, edges, GroupPresentation(gens, ()))
    relators = []
    for a, b, c in K.simplices_of(2) if K.dimension >= 2 else ():
        r = partial.word_of_path([a, b, c, a])
        if r:
            relators.append(r)
    return EdgePathPresentation(K, base, parent, edges, GroupPresentation(gens, tuple(relators)))


# coset enumeration


@dataclass(frozen=True)
class Inconclusive:
    bound: int

    def to_json(self) -> dict:
        return {"inconclusive": True, "bound": self.bound}


class _Overflow(Exception):
    pass


class _CosetTable:
    def __init__(self, ngens: int, bound: int):
        self.ncols = 2 * ngens
        self.bound = bound
        self.table = [[None] * self.ncols]
        self.p = [0]

    @staticmethod
    def col(x: int) -> int:
        return 2 * (abs(x) - 1) + (0 if x > 0 else 1)

    def live(self, c: int) -> bool:
        return self.p[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.bound:
            raise _Overflow
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def _merge(self, k: int, l: int, queue: list) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        m, n = min(k, l), max(k, l)
        self.p[n] = m
        queue.append(n)

    def coincidence(self, a: int, b: int) -> None:
        queue: list = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                if self.table[f][x ^ 1] == e:
                    self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        if not word:
            return
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.table[f][self.col(word[i])] is not None:
                f = self.table[f][self.col(word[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][self.col(-word[j])] is not None:
                b = self.table[b][self.col(-word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f][self.col(word[i])] = b
                self.table[b][self.col(-word[i])] = f
                return
            self.define(f, self.col(word[i]))


def coset_enumeration(
    P: GroupPresentation, subgroup: Sequence[Sequence[int]], bound: int = DEFAULT_COSET_BOUND
) -> Union[int, Inconclusive]:
    """Index of the subgroup generated by ``subgroup`` (HLT strategy), or Inconclusive."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    T = _CosetTable(len(P.generators), bound)
    try:
        for w in subgroup:
            T.scan_and_fill(0, tuple(w))
        c = 0
        while c < len(T.table):
            for r in P.relators:
                if not T.live(c):
                    break
                T.scan_and_fill(c, r)
            if T.live(c):
                for x in range(T.ncols):
                    if T.table[c][x] is None:
                        T.define(c, x)
            c += 1
    except _Overflow:
        return Inconclusive(bound)
    return sum(1 for c in range(len(T.table)) if T.live(c))


# action groupoids


@dataclass(frozen=True)
class ActionPi1:
    """π₁ of ``G(K)`` as π₁ of the quotient, with the maps of the exact sequence.

    ``inclusion`` gives, for each generator of π₁(K), its word in the
    quotient presentation.  ``monodromy`` gives the group element reached by
    lifting each quotient generator from the base vertex.
    """

    presentation: GroupPresentation
    base: str
    kernel: GroupPresentation
    inclusion: tuple
    monodromy: tuple
    group_order: int
    index: Union[int, Inconclusive]
    composite_trivial: bool
    surjective: bool

    @property
    def exact(self) -> bool:
        return self.composite_trivial and self.surjective and self.index == self.group_order

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "base": self.base,
            "kernel": self.kernel.to_json(),
            "inclusion": [list(w) for w in self.inclusion],
            "monodromy": list(self.monodromy),
            "group_order": self.group_order,
            "index": self.index if isinstance(self.index, int) else self.index.to_json(),
            "composite_trivial": self.composite_trivial,
            "surjective": self.surjective,
            "exact": self.exact,
        }


def _lift_path(SG: SimplicialActionGroupoid, orbit: dict, start: str, path: Sequence[str]) -> str:
    """Endpoint of the lift of a quotient vertex path starting at ``start``."""
    K = SG.complex
    nbrs: dict = {v: set() for v in K.vertices}
    for u, v in K.simplices_of(1) if K.dimension >= 1 else ():
        nbrs[u].add(v)
        nbrs[v].add(u)
    at = start
    for q in path[1:]:
        options = [y for y in nbrs[at] if orbit[y] == q]
        if len(options) != 1:
            raise AssertionError("quotient map is not a covering along this path")
        at = options[0]
    return at


def pi1_action_groupoid(
    SG: SimplicialActionGroupoid, base: Optional[str] = None, bound: int = DEFAULT_COSET_BOUND
) -> ActionPi1:
    check_free_regular(SG)
    K = SG.complex
    require_connected(K)
    base = K.vertices[0] if base is None else base
    Q, orbit = quotient_complex(SG)
    quotient = edge_path_presentation(Q, orbit[base])
    upstairs = edge_path_presentation(K, base)

    inclusion = []
    for i in range(1, len(upstairs.generator_edges) + 1):
        loop = upstairs.generator_loop(i)
        inclusion.append(quotient.word_of_path([orbit[v] for v in loop]))

    def element_reached(end: str) -> str:
        return next(g for g in SG.group.elements if SG.act(base, g) == end)

    monodromy = []
    for i in range(1, len(quotient.generator_edges) + 1):
        end = _lift_path(SG, orbit, base, quotient.generator_loop(i))
        monodromy.append(element_reached(end))

    composite_trivial = all(
        _lift_path(SG, orbit, base, quotient.loop_of_word(w)) == base for w in inclusion
    )
    surjective = SG.group.generated(monodromy) == frozenset(SG.group.elements)
    index = coset_enumeration(quotient.presentation, inclusion, bound)
    return ActionPi1(
        quotient.presentation,
        orbit[base],
        upstairs.presentation,
        tuple(inclusion),
        tuple(monodromy),
        SG.group.order,
        index,
        composite_trivial,
        surjective,
    )
