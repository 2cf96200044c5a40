"""JSON schemas for every input and output object.

Any reference to another object may be given inline, as a ``{"standard":
...}`` builder description, or as a path string resolved relative to the
file that contains it.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .bibundle import Bibundle, angs, invert, make_bibundle, tensor, unit_bibundle
from .cocycles import Cocycle, circle_cocycle, make_cover, validate_cocycle
from .errors import SchemaError
from .fundamental import GroupPresentation
from .groupoid import (
    FiniteGroupoid,
    GroupoidFunctor,
    action,
    cyclic,
    discrete_set,
    disjoint_union,
    effect,
    identity_functor,
    make_functor,
    make_groupoid,
    pair,
    point,
    product,
)
from .groups import permutation_group
from .simplicial import (
    SimplicialActionGroupoid,
    SimplicialComplex,
    from_generators,
    make_complex,
    polygon,
    rot,
    trivial_action,
)
from .topology import FiniteSpace, pseudocircle


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}", path=str(path)) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc.msg}", path=str(path), line=exc.lineno) from exc


def _need(data: Any, key: str, kind: str):
    if not isinstance(data, dict) or key not in data:
        raise SchemaError(f"{kind} is missing {key!r}")
    return data[key]


def _strs(values, what: str) -> list:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise SchemaError(f"{what} must be a list of strings")
    return values


def _str_map(values, what: str) -> dict:
    if not isinstance(values, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in values.items()):
        raise SchemaError(f"{what} must map strings to strings")
    return values


# dumping


def groupoid_to_json(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "morphisms": {g: [G.dom[g], G.cod[g]] for g in G.morphisms},
        "unit": dict(sorted(G.unit.items())),
        "inverse": {g: G.inv[g] for g in G.morphisms},
        "compose": sorted([g2, g1, g] for (g2, g1), g in G.comp.items()),
    }


def functor_to_json(phi: GroupoidFunctor) -> dict:
    return {
        "source": groupoid_to_json(phi.source),
        "target": groupoid_to_json(phi.target),
        "objects": dict(sorted(phi.obj_map.items())),
        "morphisms": dict(sorted(phi.mor_map.items())),
    }


def space_to_json(X: FiniteSpace) -> dict:
    return X.to_json()


def bibundle_to_json(E: Bibundle) -> dict:
    out = {
        "left": groupoid_to_json(E.left),
        "right": groupoid_to_json(E.right),
        "total": list(E.total),
        "p": {e: E.p[e] for e in E.total},
        "w": {e: E.w[e] for e in E.total},
        "left_action": sorted([g, e, x] for (g, e), x in E.left_act.items()),
        "right_action": sorted([e, h, x] for (e, h), x in E.right_act.items()),
    }
    if E.total_space is not None:
        out["space"] = space_to_json(E.total_space)
    if E.base_space is not None:
        out["base"] = space_to_json(E.base_space)
    return out


def cocycle_to_json(c: Cocycle) -> dict:
    return {
        "space": space_to_json(c.cover.space),
        "pieces": [sorted(U) for U in c.cover.pieces],
        "target": groupoid_to_json(c.target),
        "maps": sorted([i, j, x, g] for (i, j, x), g in c.maps.items()),
    }


def complex_to_json(K: SimplicialComplex) -> dict:
    return K.to_json()


def action_to_json(SG: SimplicialActionGroupoid) -> dict:
    return SG.to_json()


def presentation_to_json(P: GroupPresentation) -> dict:
    return P.to_json()


# loading


class Loader:
    """Resolves references relative to ``base_dir``."""

    def __init__(self, base_dir: Union[str, Path] = "."):
        self.base_dir = Path(base_dir)

    def _resolve(self, ref: Any) -> tuple:
        """``(data, loader for nested references)``."""
        if isinstance(ref, str):
            path = self.base_dir / ref
            return read_json(path), Loader(path.parent)
        return ref, self

    # groupoids

    def groupoid(self, ref: Any) -> FiniteGroupoid:
        data, sub = self._resolve(ref)
        if not isinstance(data, dict):
            raise SchemaError("groupoid must be a JSON object")
        if "standard" in data:
            return sub._standard_groupoid(data)
        try:
            objects = _strs(_need(data, "objects", "groupoid"), "objects")
            morphisms = {}
            for g, dc in _need(data, "morphisms", "groupoid").items():
                if not (isinstance(dc, list) and len(dc) == 2):
                    raise SchemaError("morphism entries must be [dom, cod]", morphism=g)
                morphisms[g] = (dc[0], dc[1])
            unit = _str_map(_need(data, "unit", "groupoid"), "unit")
            inv = _str_map(_need(data, "inverse", "groupoid"), "inverse")
            comp = {}
            for entry in _need(data, "compose", "groupoid"):
                if not (isinstance(entry, list) and len(entry) == 3):
                    raise SchemaError("compose entries must be [g2, g1, g2∘g1]")
                comp[(entry[0], entry[1])] = entry[2]
        except AttributeError as exc:
            raise SchemaError(f"malformed groupoid: {exc}") from exc
        return make_groupoid(objects, morphisms, unit, inv, comp)

    def _standard_groupoid(self, data: dict) -> FiniteGroupoid:
        kind = data["standard"]
        if kind == "pair":
            return pair(data.get("objects") or int(_need(data, "n", "pair groupoid")))
        if kind == "point":
            return point()
        if kind == "cyclic":
            return cyclic(int(_need(data, "k", "cyclic groupoid")))
        if kind == "discrete":
            return discrete_set(data.get("objects") or int(_need(data, "n", "discrete groupoid")))
        if kind == "action":
            points = _strs(_need(data, "points", "action groupoid"), "points")
            gens = [_str_map(g, "generator") for g in _need(data, "generators", "action groupoid")]
            group, perms = permutation_group(gens, points)
            return action(group, points, {(x, g): perms[g][x] for x in points for g in group.elements})
        if kind in ("disjoint_union", "product"):
            parts = _need(data, "parts", kind)
            if not isinstance(parts, list) or len(parts) != 2:
                raise SchemaError(f"{kind} needs two parts")
            G, H = (self.groupoid(p) for p in parts)
            return disjoint_union(G, H) if kind == "disjoint_union" else product(G, H)
        if kind == "effect":
            return effect(self.groupoid(_need(data, "of", "effect")))[0]
        if kind == "vertex_groupoid":
            return self.action(_need(data, "of", "vertex groupoid")).vertex_groupoid
        raise SchemaError(f"unknown standard groupoid {kind!r}")

    # functors

    def functor(self, ref: Any) -> GroupoidFunctor:
        data, sub = self._resolve(ref)
        if not isinstance(data, dict):
            raise SchemaError("functor must be a JSON object")
        if "identity" in data:
            return identity_functor(sub.groupoid(data["identity"]))
        if "effect" in data:
            return effect(sub.groupoid(data["effect"]))[1]
        if "compose" in data:
            second, first = (sub.functor(f) for f in data["compose"])
            return second.after(first)
        source = sub.groupoid(_need(data, "source", "functor"))
        target = sub.groupoid(_need(data, "target", "functor"))
        obj_map = _str_map(_need(data, "objects", "functor"), "objects")
        mor_map = _str_map(_need(data, "morphisms", "functor"), "morphisms")
        return make_functor(source, target, obj_map, mor_map)

    # spaces, bundles, cocycles

    def space(self, data: Any) -> FiniteSpace:
        if isinstance(data, dict) and data.get("standard") == "pseudocircle":
            return pseudocircle()
        points = _strs(_need(data, "points", "space"), "points")
        if "opens" in data:
            return FiniteSpace.from_opens(points, data["opens"])
        pairs = data.get("order", [])
        if not all(isinstance(p, list) and len(p) == 2 for p in pairs):
            raise SchemaError("order entries must be [x, y] pairs")
        return FiniteSpace.from_relation(points, [tuple(p) for p in pairs])

    def bibundle(self, ref: Any) -> Bibundle:
        data, sub = self._resolve(ref)
        if not isinstance(data, dict):
            raise SchemaError("bibundle must be a JSON object")
        if "angs" in data:
            return angs(sub.functor(data["angs"]))
        if "unit" in data:
            return unit_bibundle(sub.groupoid(data["unit"]))
        if "tensor" in data:
            first, second = (sub.bibundle(b) for b in data["tensor"])
            return tensor(first, second)
        if "invert" in data:
            return invert(sub.bibundle(data["invert"]))
        left = sub.groupoid(_need(data, "left", "bibundle"))
        right = sub.groupoid(_need(data, "right", "bibundle"))
        total = _strs(_need(data, "total", "bibundle"), "total")
        p = _str_map(_need(data, "p", "bibundle"), "p")
        w = _str_map(_need(data, "w", "bibundle"), "w")
        try:
            left_act = {(g, e): x for g, e, x in _need(data, "left_action", "bibundle")}
            right_act = {(e, h): x for e, h, x in _need(data, "right_action", "bibundle")}
        except (TypeError, ValueError) as exc:
            raise SchemaError("action entries must be triples") from exc
        total_space = sub.space(data["space"]) if "space" in data else None
        base_space = sub.space(data["base"]) if "base" in data else None
        return make_bibundle(left, right, total, p, w, left_act, right_act, total_space, base_space)

    def cocycle(self, ref: Any) -> Cocycle:
        data, sub = self._resolve(ref)
        if not isinstance(data, dict):
            raise SchemaError("cocycle must be a JSON object")
        target = sub.groupoid(_need(data, "target", "cocycle"))
        if data.get("standard") == "circle":
            return circle_cocycle(target, _need(data, "twist", "circle cocycle"))
        space = sub.space(_need(data, "space", "cocycle"))
        pieces = _need(data, "pieces", "cocycle")
        cover = make_cover(space, pieces)
        try:
            maps = {(int(i), int(j), x): g for i, j, x, g in _need(data, "maps", "cocycle")}
        except (TypeError, ValueError) as exc:
            raise SchemaError("cocycle maps must be [i, j, x, g] entries") from exc
        return validate_cocycle(cover, target, maps)

    # simplicial inputs

    def complex(self, ref: Any) -> SimplicialComplex:
        data, _ = self._resolve(ref)
        if isinstance(data, dict) and data.get("standard") == "polygon":
            return polygon(int(_need(data, "n", "polygon")))
        vertices = _strs(_need(data, "vertices", "complex"), "vertices")
        facets = _need(data, "facets", "complex")
        if not isinstance(facets, list) or not all(isinstance(f, list) and f for f in facets):
            raise SchemaError("facets must be nonempty lists of vertices")
        return make_complex(vertices, [tuple(f) for f in facets])

    def action(self, ref: Any) -> SimplicialActionGroupoid:
        data, sub = self._resolve(ref)
        if not isinstance(data, dict):
            raise SchemaError("action groupoid must be a JSON object")
        if data.get("standard") == "rot":
            return rot(int(_need(data, "k", "rot")), int(_need(data, "m", "rot")))
        K = sub.complex(_need(data, "complex", "action groupoid"))
        gens = data.get("generators", [])
        if not gens:
            return trivial_action(K)
        return from_generators(K, [_str_map(g, "generator") for g in gens])

    def presentation(self, ref: Any) -> GroupPresentation:
        data, _ = self._resolve(ref)
        return GroupPresentation.from_json(data)


def load(kind: str, path: Union[str, Path]) -> Any:
    """Load one object of the given kind from a file."""
    path = Path(path)
    return getattr(Loader(path.parent), kind)(path.name)


def is_simplicial(data: Any) -> bool:
    return isinstance(data, dict) and ("complex" in data or data.get("standard") == "rot")


def same_action(a: SimplicialActionGroupoid, b: SimplicialActionGroupoid) -> bool:
    """Equal complexes and equal sets of vertex permutations."""
    perms = lambda SG: {tuple(SG.action[g][v] for v in SG.complex.vertices) for g in SG.group.elements}  # noqa: E731
    return a.complex == b.complex and perms(a) == perms(b)


def round_trip(kind: str, obj: Any) -> Any:
    """Dump to JSON text and load back."""
    dumper = {
        "groupoid": groupoid_to_json,
        "functor": functor_to_json,
        "bibundle": bibundle_to_json,
        "cocycle": cocycle_to_json,
        "complex": complex_to_json,
        "action": action_to_json,
        "presentation": presentation_to_json,
    }[kind]
    return getattr(Loader(), kind)(json.loads(dumps(dumper(obj))))

