"""Named example inputs shared by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from functools import lru_cache

from .bibundle import Bibundle, angs, invert, make_bibundle, unit_bibundle
from .cocycles import circle_cocycle, make_cover, minimal_open_cover, trivial_cocycle, validate_cocycle
from .groupoid import (
    FiniteGroupoid,
    GroupoidFunctor,
    action,
    cyclic,
    discrete_set,
    disjoint_union,
    effect,
    group_groupoid,
    identity_functor,
    is_essential_equivalence,
    make_functor,
    pair,
    pid,
    point,
)
from .groups import permutation_group
from .simplicial import (
    SimplicialActionGroupoid,
    barycentric_subdivision,
    make_complex,
    polygon,
    rot,
    trivial_action,
)
from .topology import FiniteSpace, pseudocircle


def swap_groupoid() -> FiniteGroupoid:
    """ℤ/2 swapping two points."""
    group, perms = permutation_group([{"x": "y", "y": "x"}], ["x", "y"])
    return action(group, ["x", "y"], {(x, g): perms[g][x] for x in "xy" for g in group.elements})


def symmetric3() -> FiniteGroupoid:
    group, _ = permutation_group([{"1": "2", "2": "3", "3": "1"}, {"1": "2", "2": "1", "3": "3"}], ["1", "2", "3"])
    return group_groupoid(group)


def partial_swap() -> FiniteGroupoid:
    """ℤ/2 swapping ``x, y`` and fixing ``z``: two orbits, one with isotropy."""
    group, perms = permutation_group([{"x": "y", "y": "x", "z": "z"}], ["x", "y", "z"])
    return action(group, ["x", "y", "z"], {(x, g): perms[g][x] for x in "xyz" for g in group.elements})


@lru_cache(maxsize=None)
def groupoids() -> dict:
    return {
        "point": point(),
        "pair2": pair(2),
        "pair3": pair(3),
        "cyclic2": cyclic(2),
        "cyclic3": cyclic(3),
        "cyclic4": cyclic(4),
        "swap": swap_groupoid(),
        "discrete2": discrete_set(["a", "b"]),
        "pair2+cyclic2": disjoint_union(pair(2), cyclic(2)),
        "s3": symmetric3(),
        "partial_swap": partial_swap(),
    }


def _to_point(G: FiniteGroupoid) -> GroupoidFunctor:
    P = point()
    u = P.unit["*"]
    return make_functor(G, P, {a: "*" for a in G.objects}, {g: u for g in G.morphisms})


def _from_point(G: FiniteGroupoid, a: str) -> GroupoidFunctor:
    return make_functor(point(), G, {"*": a}, {point().unit["*"]: G.unit[a]})


def _sign(S3: FiniteGroupoid) -> GroupoidFunctor:
    """Parity of each permutation, read off its order and the group structure."""
    C2 = cyclic(2)
    rotations = {g for g in S3.morphisms if S3.compose_path(g, g, g) == S3.unit["*"]}
    return make_functor(S3, C2, {"*": "*"}, {g: "0" if g in rotations else "1" for g in S3.morphisms})


@lru_cache(maxsize=None)
def functors() -> dict:
    G = groupoids()
    S3 = G["s3"]
    r = next(g for g in S3.morphisms if S3.compose_path(g, g, g) == S3.unit["*"] and g != S3.unit["*"])
    swap = G["swap"]
    return {
        "id_pair3": identity_functor(G["pair3"]),
        "id_cyclic2": identity_functor(G["cyclic2"]),
        "id_s3": identity_functor(S3),
        "eff_cyclic2": effect(G["cyclic2"])[1],
        "eff_cyclic4": effect(G["cyclic4"])[1],
        "eff_swap": effect(swap)[1],
        "point_to_pair2": _from_point(G["pair2"], "0"),
        "point_to_pair3": _from_point(G["pair3"], "0"),
        "pair2_to_point": _to_point(G["pair2"]),
        "pair3_to_point": _to_point(G["pair3"]),
        "cyclic2_to_point": _to_point(G["cyclic2"]),
        "cyclic4_to_cyclic2": make_functor(
            G["cyclic4"], G["cyclic2"], {"*": "*"}, {str(i): str(i % 2) for i in range(4)}
        ),
        "cyclic2_to_cyclic4": make_functor(G["cyclic2"], G["cyclic4"], {"*": "*"}, {"0": "0", "1": "2"}),
        "cyclic3_to_s3": make_functor(
            G["cyclic3"], S3, {"*": "*"}, {"0": S3.unit["*"], "1": r, "2": S3.compose(r, r)}
        ),
        "s3_sign": _sign(S3),
        "discrete2_to_pair2": make_functor(
            G["discrete2"], G["pair2"], {"a": "0", "b": "1"}, {pid("a", "a"): pid("0", "0"), pid("b", "b"): pid("1", "1")}
        ),
        "pair2_to_swap": make_functor(
            G["pair2"],
            swap,
            {"0": "x", "1": "y"},
            {pid(j, i): _swap_morphism(swap, {"0": "x", "1": "y"}[i], {"0": "x", "1": "y"}[j]) for i in "01" for j in "01"},
        ),
    }


def _swap_morphism(swap: FiniteGroupoid, source: str, target: str) -> str:
    return next(g for g in swap.hom(source, target))


def orbit_bundle(G: FiniteGroupoid) -> Bibundle:
    """``G`` acting on its objects by ``g·dom g = cod g``, over a point.

    Transitive exactly when ``G`` has one orbit; principal exactly when,
    in addition, every vertex group is trivial.
    """
    P = point()
    u = P.unit["*"]
    left_act = {(g, G.dom[g]): G.cod[g] for g in G.morphisms}
    right_act = {(a, u): a for a in G.objects}
    return make_bibundle(G, P, G.objects, {a: a for a in G.objects}, {a: "*" for a in G.objects}, left_act, right_act)


@lru_cache(maxsize=None)
def bibundles() -> dict:
    """Discrete bundles: ``angs`` of every functor, unit bundles, inverses and a few non-principal ones."""
    out = {}
    for name, phi in functors().items():
        out[f"angs({name})"] = angs(phi)
        if is_essential_equivalence(phi):
            out[f"inv({name})"] = invert(angs(phi))
    for name in ("point", "pair2", "cyclic2", "cyclic3", "swap", "s3"):
        out[f"unit({name})"] = unit_bibundle(groupoids()[name])
    for name in ("cyclic2", "pair3", "pair2+cyclic2", "partial_swap"):
        out[f"orbit({name})"] = orbit_bundle(groupoids()[name])
    return out


@lru_cache(maxsize=None)
def cocycles() -> dict:
    C2, C3 = cyclic(2), cyclic(3)
    two = FiniteSpace.discrete(["x", "y"])
    three = FiniteSpace.discrete(["x", "y", "z"])
    P2 = pair(2)
    return {
        "circle_twisted": circle_cocycle(C2, "1"),
        "circle_trivial": circle_cocycle(C2, "0"),
        "circle_cyclic3": circle_cocycle(C3, "1"),
        "circle_minimal_pair2": trivial_cocycle(minimal_open_cover(pseudocircle()), P2, "1"),
        "discrete_pair2": validate_cocycle(
            make_cover(two, [{"x", "y"}, {"y"}]),
            P2,
            {
                (0, 0, "x"): pid("0", "0"),
                (0, 0, "y"): pid("0", "0"),
                (1, 1, "y"): pid("1", "1"),
                (0, 1, "y"): pid("0", "1"),
                (1, 0, "y"): pid("1", "0"),
            },
        ),
        "discrete_chain": validate_cocycle(
            make_cover(three, [{"x", "y"}, {"y", "z"}]),
            C2,
            {
                (0, 0, "x"): "0",
                (0, 0, "y"): "0",
                (1, 1, "y"): "0",
                (1, 1, "z"): "0",
                (0, 1, "y"): "1",
                (1, 0, "y"): "1",
            },
        ),
    }


def wedge() -> SimplicialActionGroupoid:
    """Two triangle boundaries sharing the vertex ``0``."""
    K = make_complex(
        ["0", "1", "2", "3", "4"],
        [("0", "1"), ("1", "2"), ("0", "2"), ("0", "3"), ("3", "4"), ("0", "4")],
    )
    return trivial_action(K)


def octahedron_antipodal() -> SimplicialActionGroupoid:
    """ℤ/2 acting antipodally on the subdivided octahedron (a sphere over a projective plane)."""
    verts = ["x+", "x-", "y+", "y-", "z+", "z-"]
    faces = [(a, b, c) for a in ("x+", "x-") for b in ("y+", "y-") for c in ("z+", "z-")]
    K = make_complex(verts, faces)
    flip = {v: v[0] + ("-" if v[1] == "+" else "+") for v in verts}
    group, perms = permutation_group([flip], verts)
    coarse = SimplicialActionGroupoid(group, K, perms)
    return barycentric_subdivision(coarse)


@lru_cache(maxsize=None)
def action_groupoids() -> dict:
    """Free regular simplicial actions."""
    triangle = polygon(3)
    simplex = make_complex(["0", "1", "2"], [("0", "1", "2")])
    return {
        "rot(2,3)": rot(2, 3),
        "rot(3,3)": rot(3, 3),
        "rot(4,3)": rot(4, 3),
        "rot(2,4)": rot(2, 4),
        "rot(3,4)": rot(3, 4),
        "triangle": trivial_action(triangle),
        "simplex": trivial_action(simplex),
        "wedge": wedge(),
        "projective_plane": octahedron_antipodal(),
    }


def mayer_vietoris_instances() -> list:
    """``(name, groupoid, U, V)`` with invariant covering pieces."""
    r24, r34, r23 = rot(2, 4), rot(3, 4), rot(2, 3)
    du = disjoint_union(pair(2), cyclic(2))
    return [
        (
            "rot(2,4)",
            r24,
            [str(i) for i in range(8) if i % 4 in (0, 1, 2)],
            [str(i) for i in range(8) if i % 4 in (2, 3, 0)],
        ),
        (
            "rot(3,4)",
            r34,
            [str(i) for i in range(12) if i % 4 in (0, 1, 2)],
            [str(i) for i in range(12) if i % 4 in (2, 3, 0)],
        ),
        ("rot(2,3) whole", r23, list(r23.complex.vertices), list(r23.complex.vertices)),
        (
            "pair2+cyclic2",
            du,
            [o for o in du.objects if o.startswith("(0,")],
            [o for o in du.objects if o.startswith("(1,")],
        ),
    ]


def morita_pairs() -> list:
    """Pairs of corpus groupoids known to be Morita equivalent."""
    return [
        ("pair2", "point"),
        ("pair3", "point"),
        ("swap", "pair2"),
        ("cyclic2", "cyclic2"),
        ("swap", "point"),
    ]

