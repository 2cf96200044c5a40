"""Leaves and holonomy of transitive bibundles.

Paths in a finite discrete space are constant, so an H-loop is just a chain
of H-morphisms ``h1, ..., hn`` with ``dom h1`` the base object,
``dom h(i+1) == cod h(i)`` and ``cod hn`` back at the base.  Lifting a loop
into a bundle uses the right action: the lift of ``h`` from ``e`` is
``e·h⁻¹``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .bibundle import (
    Bibundle,
    _require_discrete,
    angs,
    check_equivariant,
    classify_bundle,
    division,
    tensor_with_classes,
)
from .errors import NotEquivariant, NotLiftable, NotPrincipal, NotTransitive
from .groupoid import (
    FiniteGroupoid,
    GroupoidFunctor,
    discrete_set,
    effect,
    identity_functor,
    orbit_space,
    pid,
)
from .groups import FiniteGroup


@dataclass(frozen=True)
class Component:
    """An H-connected component of the fiber ``p⁻¹(fiber_object)``."""

    fiber_object: str
    elements: tuple
    underlying: tuple
    holonomy: tuple  # elements of G(a, a) preserving the component


@dataclass(frozen=True)
class Leaf:
    fiber_object: str
    component: tuple
    underlying: tuple
    holonomy: FiniteGroup

    def to_json(self) -> dict:
        return {
            "fiber_object": self.fiber_object,
            "component": list(self.component),
            "underlying": list(self.underlying),
            "holonomy_order": self.holonomy.order,
            "holonomy_generators": list(self.holonomy.generators),
        }


def _subgroup(G: FiniteGroupoid, els: Sequence[str], a: str) -> FiniteGroup:
    els = tuple(sorted(els))
    return FiniteGroup(
        els,
        {(x, y): G.compose(x, y) for x in els for y in els},
        G.unit[a],
        {x: G.inv[x] for x in els},
    )


def components(E: Bibundle) -> list:
    """All H-connected components of all fibers, fiber objects in order."""
    _require_discrete(E)
    G = E.left
    out = []
    for a in G.objects:
        seen: set = set()
        for e in E.p_fiber(a):
            if e in seen:
                continue
            comp = {E.act_right(e, h) for h in E.right.ending_at(E.w[e])}
            seen |= comp
            members = frozenset(comp)
            hol = []
            for g in G.hom(a, a):
                images = {E.act_left(g, x) for x in members}
                if images <= members:
                    hol.append(g)
            out.append(
                Component(
                    a,
                    tuple(sorted(members)),
                    tuple(sorted({E.w[x] for x in members})),
                    tuple(hol),
                )
            )
    return out


def leaves(E: Bibundle) -> list:
    """One leaf per block of the induced partition of the H-objects."""
    if not classify_bundle(E).transitive:
        raise NotTransitive("leaves are defined for transitive bundles")
    comps = components(E)
    chosen: dict = {}
    for c in comps:
        key = c.underlying
        for other in chosen:
            if set(other) & set(key) and other != key:
                raise AssertionError("components with overlapping but distinct images")
        if key not in chosen:
            chosen[key] = c
    out = []
    for key in sorted(chosen, key=lambda k: k[0]):
        c = chosen[key]
        out.append(Leaf(c.fiber_object, c.elements, c.underlying, _subgroup(E.left, c.holonomy, c.fiber_object)))
    return out


def leaf_partition(E: Bibundle) -> list:
    return [leaf.underlying for leaf in leaves(E)]


@dataclass(frozen=True)
class ConjugacyRecord:
    source: Component
    target: Component
    conjugator: str
    maps_component: bool
    conjugates_holonomy: bool


def conjugacy_check(E: Bibundle) -> list:
    """For components with meeting images, the connecting ``g`` conjugates holonomy."""
    G = E.left
    comps = components(E)
    out = []
    for c in comps:
        for d in comps:
            common = sorted(set(c.underlying) & set(d.underlying))
            if not common:
                continue
            b = common[0]
            e = next(x for x in c.elements if E.w[x] == b)
            e2 = next(x for x in d.elements if E.w[x] == b)
            g = division(E, e2, e)
            moved = {E.act_left(g, x) for x in c.elements}
            conj = {G.compose_path(g, k, G.inv[g]) for k in c.holonomy}
            out.append(ConjugacyRecord(c, d, g, moved == set(d.elements), conj == set(d.holonomy)))
    return out


def associated_bundle(E: Bibundle) -> tuple:
    """``E/H`` as a bundle over the orbit set of H (named by least objects).

    Returns ``(bundle, quotient)`` where ``quotient`` sends each element of E
    to its H-orbit.
    """
    _require_discrete(E)
    H = E.right
    blocks = orbit_space(H)
    block_name = {b: blocks.blocks[blocks.block_of[b]][0] for b in H.objects}
    base = discrete_set([blk[0] for blk in blocks.blocks])
    quotient: dict = {}
    for e in E.total:
        if e in quotient:
            continue
        orbit = {E.act_right(e, h) for h in H.ending_at(E.w[e])}
        name = min(orbit)
        for x in orbit:
            quotient[x] = name
    names = sorted(set(quotient.values()))
    left_act = {}
    for n in names:
        for g in E.left.starting_at(E.p[n]):
            left_act[(g, n)] = quotient[E.act_left(g, n)]
    right_act = {(n, base.unit[block_name[E.w[n]]]): n for n in names}
    bundle = Bibundle(
        E.left,
        base,
        tuple(names),
        {n: E.p[n] for n in names},
        {n: block_name[E.w[n]] for n in names},
        left_act,
        right_act,
    )
    return bundle, quotient


@dataclass(frozen=True)
class QuotientLeafRecord:
    component: Component
    image: Component
    blocks_agree: bool
    holonomy_agrees: bool


def quotient_leaf_check(E: Bibundle) -> list:
    """Each component maps onto a component of ``E/H`` with the same holonomy."""
    Q, q = associated_bundle(E)
    H = E.right
    blocks = orbit_space(H)
    qcomps = {c.elements: c for c in components(Q)}
    out = []
    for c in components(E):
        image = tuple(sorted({q[x] for x in c.elements}))
        d = qcomps.get(image)
        if d is None:
            raise AssertionError(f"image of component {c.elements} is not a component")
        block_names = tuple(sorted({blocks.blocks[blocks.block_of[b]][0] for b in c.underlying}))
        out.append(
            QuotientLeafRecord(
                c,
                d,
                block_names == d.underlying and d.fiber_object == c.fiber_object,
                set(c.holonomy) == set(d.holonomy),
            )
        )
    return out


def holonomy_is_free(E: Bibundle) -> bool:
    for c in components(E):
        for g in c.holonomy:
            if E.left.is_unit(g):
                continue
            if any(E.act_left(g, x) == x for x in c.elements):
                return False
    return True


@dataclass(frozen=True)
class HLoop:
    base: str
    steps: tuple

    def then(self, other: "HLoop") -> "HLoop":
        """This loop followed by ``other``."""
        if other.base != self.base:
            raise NotLiftable("loops have different base objects")
        return HLoop(self.base, self.steps + other.steps)

    def push(self, phi: GroupoidFunctor) -> "HLoop":
        return HLoop(phi.obj_map[self.base], tuple(phi.mor_map[h] for h in self.steps))


def check_loop(H: FiniteGroupoid, loop: HLoop) -> None:
    at = loop.base
    for i, h in enumerate(loop.steps):
        if H.dom.get(h) != at:
            raise NotLiftable("loop chain breaks", step=i, morphism=h)
        at = H.cod[h]
    if at != loop.base:
        raise NotLiftable("path does not return to its base", end=at)


def lift_loop(E: Bibundle, e: str, loop: HLoop) -> list:
    """Successive lifts ``e, e·h1⁻¹, (e·h1⁻¹)·h2⁻¹, ...``."""
    H = E.right
    if E.w[e] != loop.base:
        raise NotLiftable("element does not lie over the loop base", element=e)
    check_loop(H, loop)
    points = [e]
    for h in loop.steps:
        points.append(E.act_right(points[-1], H.inv[h]))
    return points


def holonomy_of_loop(E: Bibundle, e: str, loop: HLoop) -> str:
    """The unique ``g`` with ``g⁻¹·e`` equal to the endpoint of the lift."""
    if not classify_bundle(E).principal:
        raise NotPrincipal("holonomy of loops needs a principal bundle")
    end = lift_loop(E, e, loop)[-1]
    return division(E, e, end)


def angs_holonomy(phi: GroupoidFunctor, loop: HLoop) -> str:
    """``phi(hn) ∘ ... ∘ phi(h1)``, the closed form for ``angs(phi)``."""
    G = phi.target
    out = G.unit[phi.obj_map[loop.base]]
    for h in loop.steps:
        out = G.compose(phi.mor_map[h], out)
    return out


def angs_base_element(phi: GroupoidFunctor, b: str) -> str:
    """The element ``(1, b)`` of ``angs(phi)`` over ``b``."""
    return pid(phi.target.unit[phi.obj_map[b]], b)


def short_loops(H: FiniteGroupoid, b: str, max_len: int = 2) -> list:
    """All loops at ``b`` with 1 to ``max_len`` steps, in canonical order."""
    out = []
    partial = [((), b)]
    for _ in range(max_len):
        nxt = []
        for steps, at in partial:
            for h in H.starting_at(at):
                s = steps + (h,)
                nxt.append((s, H.cod[h]))
                if H.cod[h] == b:
                    out.append(HLoop(b, s))
        partial = nxt
    return out


def functor_pushforward(psi: GroupoidFunctor, E: Bibundle) -> tuple:
    """``angs(psi) ⊗ E`` with the map ``e ↦ (1, p(e)) ⊗ e``."""
    T = tensor_with_classes(angs(psi), E)
    alpha = {e: T.class_of[(angs_base_element(psi, E.p[e]), e)] for e in E.total}
    return T.bundle, alpha


def effect_pushforward(E: Bibundle) -> tuple:
    """Push E along the effect functor of its left groupoid.

    Returns ``(F, alpha, psi)``.
    """
    _, psi = effect(E.left)
    F, alpha = functor_pushforward(psi, E)
    return F, alpha, psi


@dataclass(frozen=True)
class HolonomyIdentity:
    element: str
    loop: HLoop
    lhs: str
    rhs: str

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def pushforward_holonomy_check(
    alpha: Mapping,
    E: Bibundle,
    F: Bibundle,
    psi: GroupoidFunctor,
    phi: Optional[GroupoidFunctor] = None,
    max_len: int = 2,
) -> list:
    """``psi(hol_e(l)) == hol_alpha(e)(phi l)`` on every element and short loop."""
    phi = identity_functor(E.right) if phi is None else phi
    bad = check_equivariant(E, F, alpha, psi, phi)
    if bad:
        raise NotEquivariant("map is not equivariant", violations=[v.to_json() for v in bad[:5]])
    for B in (E, F):
        if not classify_bundle(B).principal:
            raise NotPrincipal("both bundles must be principal")
    out = []
    for e in E.total:
        for loop in short_loops(E.right, E.w[e], max_len):
            lhs = psi.mor_map[holonomy_of_loop(E, e, loop)]
            rhs = holonomy_of_loop(F, alpha[e], loop.push(phi))
            out.append(HolonomyIdentity(e, loop, lhs, rhs))
    return out
