"""Haefliger cocycles on finite covers and their principal bundles.

The base of a cover is a finite space.  With the discrete topology every
subset is open and every map is continuous, so any family of morphisms is
allowed.  With a non-discrete topology the pieces must be open and cocycle
values must be locally constant; this is what lets a four-point circle
carry a twisted ℤ/2 bundle that is not a product.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping, Optional, Sequence

from .bibundle import (
    Bibundle,
    EquivariantMap,
    check_equivariant,
    classify_bundle,
    division,
    make_bibundle,
)
from .errors import (
    CoverMismatch,
    NotACover,
    NotEquivariant,
    NotPrincipal,
    SearchTooLarge,
    ValidationError,
    Violation,
)
from .groupoid import FiniteGroupoid, discrete_set, pid
from .topology import FiniteSpace, _closure

SEARCH_CAP = 24


@dataclass(frozen=True)
class Cover:
    space: FiniteSpace
    pieces: tuple  # of frozensets

    @property
    def base(self) -> tuple:
        return self.space.points

    def overlap(self, *idx: int) -> frozenset:
        out = frozenset(self.space.points)
        for i in idx:
            out &= self.pieces[i]
        return out

    def containing(self, x: str) -> list:
        return [i for i, U in enumerate(self.pieces) if x in U]


def make_cover(space: FiniteSpace, pieces: Sequence) -> Cover:
    pieces = tuple(frozenset(U) for U in pieces)
    pts = frozenset(space.points)
    for i, U in enumerate(pieces):
        if not U <= pts:
            raise NotACover("piece has points outside the base", piece=i)
        if not space.is_open(U):
            raise NotACover("piece is not open", piece=i)
    covered = frozenset().union(*pieces) if pieces else frozenset()
    if covered != pts:
        raise NotACover("pieces do not cover the base", missing=sorted(pts - covered))
    return Cover(space, pieces)


def minimal_open_cover(space: FiniteSpace) -> Cover:
    """Pieces ``U_x``, one per point; singletons for a discrete space."""
    return Cover(space, tuple(space.minimal_open(x) for x in space.points))


@dataclass(frozen=True)
class Cocycle:
    cover: Cover
    target: FiniteGroupoid
    maps: Mapping  # (i, j, x) -> morphism of target

    def __call__(self, i: int, j: int, x: str) -> str:
        return self.maps[(i, j, x)]

    def unit_object(self, i: int, x: str) -> str:
        return self.target.dom[self.maps[(i, i, x)]]


def check_cocycle(cover: Cover, G: FiniteGroupoid, maps: Mapping) -> list:
    out = []
    n = len(cover.pieces)
    for i in range(n):
        for j in range(n):
            for x in sorted(cover.overlap(i, j)):
                if maps.get((i, j, x)) not in G.dom:
                    out.append(Violation("DomainMismatch", str(i), str(j), x))
    for (i, j, x) in maps:
        if not (0 <= i < n and 0 <= j < n) or x not in cover.overlap(i, j):
            out.append(Violation("DomainMismatch", str(i), str(j), x))
    if out:
        return out
    for i in range(n):
        for x in sorted(cover.pieces[i]):
            if not G.is_unit(maps[(i, i, x)]):
                out.append(Violation("NotUnit", str(i), x))
    for i in range(n):
        for j in range(n):
            for x in sorted(cover.overlap(i, j)):
                g = maps[(i, j, x)]
                if G.dom[g] != G.dom[maps[(j, j, x)]] or G.cod[g] != G.dom[maps[(i, i, x)]]:
                    out.append(Violation("DomainMismatch", str(i), str(j), x))
    if out:
        return out
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for x in sorted(cover.overlap(i, j, k)):
                    if G.compose(maps[(i, j, x)], maps[(j, k, x)]) != maps[(i, k, x)]:
                        out.append(Violation("CocycleFail", str(i), str(j), str(k), x))
    for i in range(n):
        for j in range(n):
            U = cover.overlap(i, j)
            for x, y in cover.space.order:
                if x in U and y in U and maps[(i, j, x)] != maps[(i, j, y)]:
                    out.append(Violation("Discontinuous", str(i), str(j), x, y))
    return out


def validate_cocycle(cover: Cover, G: FiniteGroupoid, maps: Mapping) -> Cocycle:
    violations = check_cocycle(cover, G, maps)
    if violations:
        raise ValidationError(f"{len(violations)} cocycle condition violation(s)", violations)
    return Cocycle(cover, G, dict(maps))


def trivial_cocycle(cover: Cover, G: FiniteGroupoid, a: str) -> Cocycle:
    n = len(cover.pieces)
    maps = {(i, j, x): G.unit[a] for i in range(n) for j in range(n) for x in cover.overlap(i, j)}
    return validate_cocycle(cover, G, maps)


def base_groupoid(space: FiniteSpace) -> FiniteGroupoid:
    """The base space as a groupoid with unit morphisms only."""
    return discrete_set(list(space.points))


@dataclass(frozen=True)
class SigmaBundle:
    bundle: Bibundle
    class_of: Mapping  # (g, x, i) -> element id


def sigma_with_classes(c: Cocycle) -> SigmaBundle:
    """Quotient of ``{(g, x, i) : dom g = c_ii(x)}`` by ``(g,x,i) ~ (g∘c_ij(x), x, j)``."""
    G, cover = c.target, c.cover
    n = len(cover.pieces)
    triples = []
    for i in range(n):
        for x in sorted(cover.pieces[i]):
            for g in G.starting_at(c.unit_object(i, x)):
                triples.append((i, x, g))
    class_of: dict = {}
    for t in triples:
        if t in class_of:
            continue
        i, x, g = t
        orbit = [(j, x, G.compose(g, c(i, j, x))) for j in cover.containing(x)]
        i0, x0, g0 = min(orbit)
        name = pid(g0, x0, str(i0))
        for s in orbit:
            class_of[s] = name
    reps: dict = {}
    for t in sorted(class_of):
        reps.setdefault(class_of[t], t)
    X = base_groupoid(cover.space)
    left_act, right_act, p, w = {}, {}, {}, {}
    for name, (i, x, g) in reps.items():
        p[name] = G.cod[g]
        w[name] = x
        right_act[(name, X.unit[x])] = name
        for g2 in G.starting_at(G.cod[g]):
            left_act[(g2, name)] = class_of[(i, x, G.compose(g2, g))]
    total_space = base_space = None
    if not cover.space.is_discrete:
        rel = []
        for (i, x, g), name in class_of.items():
            for y in cover.space.minimal_open(x):
                if y != x and y in cover.pieces[i]:
                    rel.append((name, class_of[(i, y, g)]))
        names = sorted(reps)
        total_space = FiniteSpace(tuple(names), _closure(names, rel))
        base_space = cover.space
    bundle = make_bibundle(G, X, list(reps), p, w, left_act, right_act, total_space, base_space)
    return SigmaBundle(bundle, {(g, x, i): v for (i, x, g), v in class_of.items()})


def sigma(c: Cocycle) -> Bibundle:
    return sigma_with_classes(c).bundle


def _local_sections(E: Bibundle, cover: Cover) -> list:
    """For each piece ``U_x`` a continuous section through the least element over x."""
    space = E.base()
    sE = E.space()
    out = []
    for x in space.points:
        start = E.w_fiber(x)[0]
        section = {}
        for y in sorted(space.minimal_open(x)):
            above = [e for e in E.w_fiber(y) if sE.leq(start, e)]
            if len(above) != 1:
                raise NotPrincipal("bundle is not locally trivial over a minimal open set", point=x, at=y)
            section[y] = above[0]
        out.append(section)
    return out


def extract_cocycle(E: Bibundle) -> Cocycle:
    """Cocycle of ``E`` on the cover by minimal open sets, least-id sections."""
    if any(not E.right.is_unit(h) for h in E.right.morphisms):
        raise NotPrincipal("cocycles are extracted from bundles over spaces")
    if not classify_bundle(E).principal:
        raise NotPrincipal("bundle is not principal")
    space = E.base()
    cover = minimal_open_cover(space)
    sections = _local_sections(E, cover)
    maps = {}
    n = len(cover.pieces)
    for i in range(n):
        for j in range(n):
            for y in cover.overlap(i, j):
                maps[(i, j, y)] = division(E, sections[i][y], sections[j][y])
    return validate_cocycle(cover, E.left, maps)


def _same_cover(c: Cocycle, c2: Cocycle) -> None:
    if c.cover != c2.cover:
        raise CoverMismatch("cocycles live on different covers")
    if c.target != c2.target:
        raise CoverMismatch("cocycles take values in different groupoids")


def is_intertwiner(c: Cocycle, c2: Cocycle, b: Mapping) -> bool:
    """``c2_ij(x) ∘ b_j(x) == b_i(x) ∘ c_ij(x)`` with the right end points."""
    G, cover = c.target, c.cover
    n = len(cover.pieces)
    for i in range(n):
        for x in cover.pieces[i]:
            g = b.get((i, x))
            if g is None or G.dom[g] != c.unit_object(i, x) or G.cod[g] != c2.unit_object(i, x):
                return False
        for x, y in cover.space.order:
            if x in cover.pieces[i] and y in cover.pieces[i] and b[(i, x)] != b[(i, y)]:
                return False
    for i in range(n):
        for j in range(n):
            for x in cover.overlap(i, j):
                if G.compose(c2(i, j, x), b[(j, x)]) != G.compose(b[(i, x)], c(i, j, x)):
                    return False
    return True


def cohomologous(c: Cocycle, c2: Cocycle, cap: int = SEARCH_CAP) -> Optional[dict]:
    """Exhaustive search for an intertwiner ``b`` from ``c`` to ``c2``.

    Each ``b_i`` is constant on the connected components of ``U_i``.
    """
    _same_cover(c, c2)
    G, cover = c.target, c.cover
    size = len(cover.pieces) * len(cover.base)
    if size > cap:
        raise SearchTooLarge("cover too large for exhaustive search", size=size, cap=cap)
    slots = []
    for i, U in enumerate(cover.pieces):
        for comp in cover.space.components(U):
            x = min(comp)
            slots.append((i, tuple(sorted(comp)), G.hom(c.unit_object(i, x), c2.unit_object(i, x))))
    b: dict = {}
    assigned_pieces: dict = {}

    def consistent(i, comp) -> bool:
        for x in comp:
            for j in cover.containing(x):
                if (j, x) not in b:
                    continue
                if G.compose(c2(i, j, x), b[(j, x)]) != G.compose(b[(i, x)], c(i, j, x)):
                    return False
                if G.compose(c2(j, i, x), b[(i, x)]) != G.compose(b[(j, x)], c(j, i, x)):
                    return False
        return True

    def search(k) -> bool:
        if k == len(slots):
            return True
        i, comp, choices = slots[k]
        for g in choices:
            for x in comp:
                b[(i, x)] = g
            if consistent(i, comp) and search(k + 1):
                return True
            for x in comp:
                del b[(i, x)]
        return False

    if search(0):
        assert is_intertwiner(c, c2, b)
        return dict(b)
    return None


def refine(c: Cocycle, cover: Cover, tau: Sequence[int]) -> Cocycle:
    """Restrict along ``tau``: piece ``k`` of ``cover`` lies in piece ``tau[k]`` of c's cover."""
    if cover.space != c.cover.space:
        raise CoverMismatch("refinement is over a different base space")
    for k, V in enumerate(cover.pieces):
        if not V <= c.cover.pieces[tau[k]]:
            raise CoverMismatch("piece is not contained in its assigned piece", piece=k)
    n = len(cover.pieces)
    maps = {(k, l, x): c(tau[k], tau[l], x) for k in range(n) for l in range(n) for x in cover.overlap(k, l)}
    return validate_cocycle(cover, c.target, maps)


def refinement_choices(fine: Cover, coarse: Cover) -> list:
    """All maps ``tau`` with each fine piece inside its coarse piece."""
    options = [[i for i, U in enumerate(coarse.pieces) if V <= U] for V in fine.pieces]
    return [list(t) for t in cartesian(*options)]


def refinement_intertwiner(c: Cocycle, fine: Cover, tau: Sequence[int], upsilon: Sequence[int]) -> dict:
    """``b_k(x) = c_{upsilon(k) tau(k)}(x)`` relating the two restrictions."""
    return {(k, x): c(upsilon[k], tau[k], x) for k, V in enumerate(fine.pieces) for x in V}


def beta(c: Cocycle, c2: Cocycle, b: Mapping) -> EquivariantMap:
    """The isomorphism ``Σ(c2) → Σ(c)``, ``[g, x, i] ↦ [g ∘ b_i(x), x, i]``."""
    S, S2 = sigma_with_classes(c), sigma_with_classes(c2)
    G = c.target
    mapping = {}
    for (g, x, i), name in S2.class_of.items():
        mapping.setdefault(name, S.class_of[(G.compose(g, b[(i, x)]), x, i)])
    bad = check_equivariant(S2.bundle, S.bundle, mapping, bijective=True)
    if bad:
        raise NotEquivariant("intertwiner does not induce an isomorphism", violations=[v.to_json() for v in bad[:5]])
    return EquivariantMap(S2.bundle, S.bundle, mapping)


def circle_cover() -> Cover:
    """Two contractible open pieces of the four-point circle meeting in ``{a, b}``."""
    from .topology import pseudocircle

    space = pseudocircle()
    return make_cover(space, [space.minimal_open("c"), space.minimal_open("d")])


def circle_cocycle(G: FiniteGroupoid, twist: str) -> Cocycle:
    """Cocycle on the circle cover: identity over ``a``, ``twist`` over ``b``."""
    cover = circle_cover()
    obj = G.objects[0]
    u = G.unit[obj]
    maps = {}
    for i in range(2):
        for x in cover.pieces[i]:
            maps[(i, i, x)] = u
    maps[(0, 1, "a")] = maps[(1, 0, "a")] = u
    maps[(0, 1, "b")] = twist
    maps[(1, 0, "b")] = G.inv[twist]
    return validate_cocycle(cover, G, maps)
