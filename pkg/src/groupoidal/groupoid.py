"""Finite groupoids with full composition tables.

A groupoid is stored as sorted object and morphism id tuples plus lookup
tables.  ``comp[(g2, g1)]`` is the composite ``g2 ∘ g1`` and is defined
exactly when ``dom g2 == cod g1``; the result has the domain of ``g1`` and the
codomain of ``g2``.

Every finite set is given the discrete topology, so the openness and
local-homeomorphism conditions on structure maps hold automatically and are
not checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BadAction,
    NoSuchObject,
    SourceTargetMismatch,
    ValidationError,
    Violation,
)
from .groups import FiniteGroup, cyclic_group


def pid(*parts: str) -> str:
    """Id for a tuple of ids, used by every derived construction."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple
    morphisms: tuple
    dom: Mapping
    cod: Mapping
    unit: Mapping
    inv: Mapping
    comp: Mapping

    def compose(self, g2: str, g1: str) -> str:
        """``g2 ∘ g1``; requires ``dom g2 == cod g1``."""
        try:
            return self.comp[(g2, g1)]
        except KeyError:
            raise ValueError(f"{g2} and {g1} are not composable") from None

    def compose_path(self, *gs: str) -> str:
        """``gs[0] ∘ gs[1] ∘ ...``; the empty path is not allowed."""
        out = gs[-1]
        for g in reversed(gs[:-1]):
            out = self.compose(g, out)
        return out

    @cached_property
    def _hom_index(self) -> dict:
        idx: dict = {}
        for g in self.morphisms:
            idx.setdefault((self.cod[g], self.dom[g]), []).append(g)
        return {k: tuple(v) for k, v in idx.items()}

    def hom(self, source: str, target: str) -> tuple:
        """Morphisms with domain ``source`` and codomain ``target``."""
        return self._hom_index.get((target, source), ())

    @cached_property
    def _out(self) -> dict:
        idx: dict = {a: [] for a in self.objects}
        for g in self.morphisms:
            idx[self.dom[g]].append(g)
        return {a: tuple(v) for a, v in idx.items()}

    @cached_property
    def _in(self) -> dict:
        idx: dict = {a: [] for a in self.objects}
        for g in self.morphisms:
            idx[self.cod[g]].append(g)
        return {a: tuple(v) for a, v in idx.items()}

    def starting_at(self, a: str) -> tuple:
        return self._out[a]

    def ending_at(self, a: str) -> tuple:
        return self._in[a]

    def is_unit(self, g: str) -> bool:
        return self.unit[self.dom[g]] == g

    @cached_property
    def object_set(self) -> frozenset:
        return frozenset(self.objects)

    def require_object(self, a: str) -> None:
        if a not in self.object_set:
            raise NoSuchObject(f"no object {a!r}", object=a)

    def full_subgroupoid(self, subset: Iterable[str]) -> "FiniteGroupoid":
        keep = frozenset(subset)
        mors = [g for g in self.morphisms if self.dom[g] in keep and self.cod[g] in keep]
        mset = frozenset(mors)
        return FiniteGroupoid(
            tuple(a for a in self.objects if a in keep),
            tuple(mors),
            {g: self.dom[g] for g in mors},
            {g: self.cod[g] for g in mors},
            {a: self.unit[a] for a in self.objects if a in keep},
            {g: self.inv[g] for g in mors},
            {k: v for k, v in self.comp.items() if k[0] in mset},
        )

    def summary(self) -> dict:
        return {
            "objects": len(self.objects),
            "morphisms": len(self.morphisms),
            "orbits": len(orbit_space(self).blocks),
        }


def check_groupoid(objects, morphisms, unit, inv, comp) -> list:
    """All axiom violations of an unchecked description.

    ``morphisms`` maps id to ``(dom, cod)``; ``comp`` maps ``(g2, g1)`` to an id.
    """
    out: list = []
    objs = set(objects)
    for g, (d, c) in morphisms.items():
        if d not in objs or c not in objs:
            out.append(Violation("UnknownId", g))
    if out:
        return out
    dom = {g: dc[0] for g, dc in morphisms.items()}
    cod = {g: dc[1] for g, dc in morphisms.items()}
    for (g2, g1), r in comp.items():
        if g2 not in morphisms or g1 not in morphisms or r not in morphisms:
            out.append(Violation("UnknownId", g2, g1, r))
        elif dom[g2] != cod[g1] or dom[r] != dom[g1] or cod[r] != cod[g2]:
            out.append(Violation("DomCodMismatch", g2, g1, r))
    for g2 in morphisms:
        for g1 in morphisms:
            if dom[g2] == cod[g1] and (g2, g1) not in comp:
                out.append(Violation("MissingComposite", g2, g1))
    if out:
        return out
    for a in sorted(objs):
        u = unit.get(a)
        if u not in morphisms or dom[u] != a or cod[u] != a:
            out.append(Violation("MissingUnit", a))
            continue
        for g in morphisms:
            if (dom[g] == a and comp[(g, u)] != g) or (cod[g] == a and comp[(u, g)] != g):
                out.append(Violation("MissingUnit", a, g))
                break
    for g in sorted(morphisms):
        gi = inv.get(g)
        if (
            gi not in morphisms
            or dom[gi] != cod[g]
            or cod[gi] != dom[g]
            or comp[(gi, g)] != unit.get(dom[g])
            or comp[(g, gi)] != unit.get(cod[g])
        ):
            out.append(Violation("BadInverse", g))
    by_cod: dict = {}
    for g in morphisms:
        by_cod.setdefault(cod[g], []).append(g)
    for (g2, g1), g21 in sorted(comp.items()):
        for g0 in by_cod.get(dom[g1], ()):
            if comp[(g21, g0)] != comp[(g2, comp[(g1, g0)])]:
                out.append(Violation("NonAssociative", g2, g1, g0))
    return out


def make_groupoid(objects, morphisms, unit, inv, comp) -> FiniteGroupoid:
    """Validate and freeze; ``morphisms`` maps id to ``(dom, cod)``."""
    if len(set(objects)) != len(list(objects)):
        raise ValidationError("duplicate object ids", [Violation("DuplicateId")])
    violations = check_groupoid(objects, morphisms, unit, inv, comp)
    if violations:
        raise ValidationError(f"{len(violations)} groupoid axiom violation(s)", violations)
    return FiniteGroupoid(
        tuple(sorted(objects)),
        tuple(sorted(morphisms)),
        {g: dc[0] for g, dc in morphisms.items()},
        {g: dc[1] for g, dc in morphisms.items()},
        dict(unit),
        dict(inv),
        dict(comp),
    )


def from_rule(objects, morphisms, unit, inv, compose) -> FiniteGroupoid:
    """Build the comp table by calling ``compose(g2, g1)`` on composable pairs."""
    by_cod: dict = {}
    for g, (_, c) in morphisms.items():
        by_cod.setdefault(c, []).append(g)
    comp = {}
    for g2, (d2, _) in morphisms.items():
        for g1 in by_cod.get(d2, ()):
            comp[(g2, g1)] = compose(g2, g1)
    return make_groupoid(objects, morphisms, unit, inv, comp)


@dataclass(frozen=True)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    obj_map: Mapping
    mor_map: Mapping

    def __call__(self, g: str) -> str:
        return self.mor_map[g]

    def after(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``self ∘ other``."""
        if other.target != self.source:
            raise SourceTargetMismatch("functors are not composable")
        return GroupoidFunctor(
            other.source,
            self.target,
            {a: self.obj_map[b] for a, b in other.obj_map.items()},
            {g: self.mor_map[h] for g, h in other.mor_map.items()},
        )


def check_functor(source, target, obj_map, mor_map) -> list:
    out = []
    for a in source.objects:
        if obj_map.get(a) not in target.object_set:
            out.append(Violation("UnmappedObject", a))
    tm = set(target.morphisms)
    for g in source.morphisms:
        if mor_map.get(g) not in tm:
            out.append(Violation("UnmappedMorphism", g))
    if out:
        return out
    for g in source.morphisms:
        fg = mor_map[g]
        if target.dom[fg] != obj_map[source.dom[g]] or target.cod[fg] != obj_map[source.cod[g]]:
            out.append(Violation("DomCodMismatch", g))
    for a in source.objects:
        if mor_map[source.unit[a]] != target.unit[obj_map[a]]:
            out.append(Violation("UnitNotPreserved", a))
    if out:
        return out
    for (g2, g1), r in source.comp.items():
        if target.comp[(mor_map[g2], mor_map[g1])] != mor_map[r]:
            out.append(Violation("CompositionNotPreserved", g2, g1))
    return out


def make_functor(source, target, obj_map, mor_map) -> GroupoidFunctor:
    violations = check_functor(source, target, obj_map, mor_map)
    if violations:
        raise ValidationError("not a functor", violations)
    return GroupoidFunctor(source, target, dict(obj_map), dict(mor_map))


def identity_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, {a: a for a in G.objects}, {g: g for g in G.morphisms})


# builders


def pair(n_or_objects) -> FiniteGroupoid:
    """Pair groupoid: exactly one morphism ``(j,i)`` from ``i`` to ``j``."""
    objs = [str(i) for i in range(n_or_objects)] if isinstance(n_or_objects, int) else list(n_or_objects)
    mors = {pid(j, i): (i, j) for i in objs for j in objs}
    return from_rule(
        objs,
        mors,
        {a: pid(a, a) for a in objs},
        {pid(j, i): pid(i, j) for i in objs for j in objs},
        lambda g2, g1: pid(mors[g2][1], mors[g1][0]),
    )


def point() -> FiniteGroupoid:
    return pair(["*"])


def discrete_set(n_or_objects) -> FiniteGroupoid:
    """Only unit morphisms; unit ids follow the pair-groupoid naming."""
    objs = [str(i) for i in range(n_or_objects)] if isinstance(n_or_objects, int) else list(n_or_objects)
    mors = {pid(a, a): (a, a) for a in objs}
    return from_rule(objs, mors, {a: pid(a, a) for a in objs}, {g: g for g in mors}, lambda g2, g1: g2)


def group_groupoid(group: FiniteGroup, obj: str = "*") -> FiniteGroupoid:
    mors = {g: (obj, obj) for g in group.elements}
    return from_rule([obj], mors, {obj: group.identity}, dict(group.inverse), group.mul)


def cyclic(k: int) -> FiniteGroupoid:
    return group_groupoid(cyclic_group(k))


def action(group: FiniteGroup, points: Sequence[str], act: Mapping) -> FiniteGroupoid:
    """Action groupoid of a right action ``act[(x, g)] = x·g``.

    Morphism ``(x,g)`` goes from ``x·g`` to ``x``; ``(x',g') ∘ (x,g) = (x',g'g)``.
    """
    pts = list(points)
    bad = []
    for x in pts:
        if act.get((x, group.identity)) != x:
            bad.append(f"{x}·e != {x}")
        for g in group.elements:
            if act.get((x, g)) not in pts:
                bad.append(f"{x}·{g} undefined")
    if not bad:
        for x in pts:
            for g1 in group.elements:
                for g2 in group.elements:
                    if act[(x, group.mul(g1, g2))] != act[(act[(x, g1)], g2)]:
                        bad.append(f"{x}·({g1}{g2}) != ({x}·{g1})·{g2}")
    if bad:
        raise BadAction("table is not a right group action", failures=bad[:10])
    mors = {pid(x, g): (act[(x, g)], x) for x in pts for g in group.elements}
    parts = {pid(x, g): (x, g) for x in pts for g in group.elements}

    def compose(m2, m1):
        x2, g2 = parts[m2]
        _, g1 = parts[m1]
        return pid(x2, group.mul(g2, g1))

    return from_rule(
        pts,
        mors,
        {x: pid(x, group.identity) for x in pts},
        {pid(x, g): pid(act[(x, g)], group.inverse[g]) for x in pts for g in group.elements},
        compose,
    )


def disjoint_union(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    objs = [pid("0", a) for a in G.objects] + [pid("1", b) for b in H.objects]
    mors, unit, inv, comp = {}, {}, {}, {}
    for tag, K in (("0", G), ("1", H)):
        for g in K.morphisms:
            mors[pid(tag, g)] = (pid(tag, K.dom[g]), pid(tag, K.cod[g]))
            inv[pid(tag, g)] = pid(tag, K.inv[g])
        for a in K.objects:
            unit[pid(tag, a)] = pid(tag, K.unit[a])
        for (g2, g1), r in K.comp.items():
            comp[(pid(tag, g2), pid(tag, g1))] = pid(tag, r)
    return make_groupoid(objs, mors, unit, inv, comp)


def product(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    objs = [pid(a, b) for a in G.objects for b in H.objects]
    mors = {
        pid(g, h): (pid(G.dom[g], H.dom[h]), pid(G.cod[g], H.cod[h]))
        for g in G.morphisms
        for h in H.morphisms
    }
    parts = {pid(g, h): (g, h) for g in G.morphisms for h in H.morphisms}

    def compose(m2, m1):
        (g2, h2), (g1, h1) = parts[m2], parts[m1]
        return pid(G.compose(g2, g1), H.compose(h2, h1))

    return from_rule(
        objs,
        mors,
        {pid(a, b): pid(G.unit[a], H.unit[b]) for a in G.objects for b in H.objects},
        {pid(g, h): pid(G.inv[g], H.inv[h]) for g in G.morphisms for h in H.morphisms},
        compose,
    )


# invariants


@dataclass(frozen=True)
class OrbitPartition:
    blocks: tuple
    block_of: Mapping


def orbit_space(G: FiniteGroupoid) -> OrbitPartition:
    """Objects grouped by reachability; blocks ordered by least member."""
    block_of: dict = {}
    blocks = []
    for a in G.objects:
        if a in block_of:
            continue
        idx = len(blocks)
        block_of[a] = idx
        members = [a]
        frontier = [a]
        while frontier:
            x = frontier.pop()
            for g in G.starting_at(x):
                y = G.cod[g]
                if y not in block_of:
                    block_of[y] = idx
                    members.append(y)
                    frontier.append(y)
        blocks.append(tuple(sorted(members)))
    return OrbitPartition(tuple(blocks), block_of)


def vertex_group(G: FiniteGroupoid, a: str) -> FiniteGroup:
    G.require_object(a)
    els = G.hom(a, a)
    return FiniteGroup(
        tuple(els),
        {(x, y): G.compose(x, y) for x in els for y in els},
        G.unit[a],
        {x: G.inv[x] for x in els},
    )


def effect(G: FiniteGroupoid) -> tuple:
    """Relation groupoid of the orbit equivalence and the quotient functor."""
    pairs = {}
    for g in G.morphisms:
        pairs[pid(G.cod[g], G.dom[g])] = (G.dom[g], G.cod[g])
    E = from_rule(
        list(G.objects),
        pairs,
        {a: pid(a, a) for a in G.objects},
        {pid(c, d): pid(d, c) for d, c in pairs.values()},
        lambda g2, g1: pid(pairs[g2][1], pairs[g1][0]),
    )
    functor = GroupoidFunctor(
        G,
        E,
        {a: a for a in G.objects},
        {g: pid(G.cod[g], G.dom[g]) for g in G.morphisms},
    )
    return E, functor


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


def is_essential_equivalence(phi: GroupoidFunctor) -> Verdict:
    """Essentially surjective and bijective on every hom-set."""
    H, G = phi.source, phi.target
    if set(phi.obj_map) != set(H.objects) or set(phi.mor_map) != set(H.morphisms):
        raise SourceTargetMismatch("functor tables do not match its source")
    image = {phi.obj_map[b] for b in H.objects}
    for a in G.objects:
        if not any(G.dom[g] in image for g in G.ending_at(a)):
            return Verdict(False, {"condition": "essentially surjective", "object": a})
    for b in H.objects:
        for b2 in H.objects:
            src = H.hom(b, b2)
            tgt = G.hom(phi.obj_map[b], phi.obj_map[b2])
            imgs = {phi.mor_map[h] for h in src}
            if len(imgs) != len(src) or len(src) != len(tgt):
                return Verdict(
                    False,
                    {
                        "condition": "bijective on hom-sets",
                        "pair": [b, b2],
                        "source_size": len(src),
                        "target_size": len(tgt),
                    },
                )
    return Verdict(True)
