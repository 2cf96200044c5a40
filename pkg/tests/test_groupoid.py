from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoidal import corpus
from groupoidal.errors import BadAction, NoSuchObject, SourceTargetMismatch, ValidationError
from groupoidal.groupoid import (
    GroupoidFunctor,
    action,
    cyclic,
    discrete_set,
    disjoint_union,
    effect,
    identity_functor,
    is_essential_equivalence,
    make_groupoid,
    orbit_space,
    pair,
    point,
    product,
    vertex_group,
)
from groupoidal.groups import cyclic_group, find_group_isomorphism, permutation_group

from oracles import groupoid_law_failures, orbit_blocks


def tables(G):
    return (
        list(G.objects),
        {g: (G.dom[g], G.cod[g]) for g in G.morphisms},
        dict(G.unit),
        dict(G.inv),
        dict(G.comp),
    )


def builders():
    group, perms = permutation_group([{"1": "2", "2": "3", "3": "1", "4": "5", "5": "6", "6": "4"}], list("123456"))
    two_cycles = action(group, list("123456"), {(x, g): perms[g][x] for x in "123456" for g in group.elements})
    return {
        "point": point(),
        "pair3": pair(3),
        "cyclic4": cyclic(4),
        "discrete3": discrete_set(3),
        "two_cycles": two_cycles,
        "union": disjoint_union(pair(2), point()),
        "product": product(pair(2), cyclic(3)),
        **corpus.groupoids(),
    }


@pytest.mark.parametrize("name", sorted(builders()))
def test_builders_pass_brute_force_axioms(name):
    G = builders()[name]
    assert groupoid_law_failures(G) == []
    make_groupoid(*tables(G))


def test_standard_sizes():
    assert pair(3).summary() == {"objects": 3, "morphisms": 9, "orbits": 1}
    C4 = cyclic(4)
    assert (len(C4.objects), len(C4.morphisms)) == (1, 4)
    assert vertex_group(C4, "*").order == 4
    swap = corpus.swap_groupoid()
    assert swap.summary() == {"objects": 2, "morphisms": 4, "orbits": 1}
    assert all(vertex_group(swap, a).order == 1 for a in swap.objects)


def test_dom_cod_mismatch_named():
    objs, mors, unit, inv, comp = tables(pair(2))
    g2, g1 = next(k for k in comp if mors[k[1]][0] != mors[k[1]][1])
    comp[(g2, g1)] = unit[mors[g1][1]]
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, unit, inv, comp)
    assert "DomCodMismatch" in exc.value.kinds()


def test_perturbed_cyclic3_is_non_associative():
    objs, mors, unit, inv, comp = tables(cyclic(3))
    comp[("1", "1")] = "1"
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, unit, inv, comp)
    assert "NonAssociative" in exc.value.kinds()
    fails = [
        (a, b, c)
        for a in "012"
        for b in "012"
        for c in "012"
        if comp[(comp[(a, b)], c)] != comp[(a, comp[(b, c)])]
    ]
    assert fails


def test_missing_unit_and_bad_inverse():
    objs, mors, unit, inv, comp = tables(cyclic(3))
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, {"*": "1"}, inv, comp)
    assert "MissingUnit" in exc.value.kinds()
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, unit, {**inv, "1": "1"}, comp)
    assert "BadInverse" in exc.value.kinds()


def test_missing_composite_rejected():
    objs, mors, unit, inv, comp = tables(pair(2))
    comp.pop(next(iter(comp)))
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, unit, inv, comp)
    assert "MissingComposite" in exc.value.kinds()


def test_bad_action_rejected():
    group = cyclic_group(2)
    g = next(x for x in group.elements if x != group.identity)
    with pytest.raises(BadAction):
        action(group, ["x", "y"], {("x", group.identity): "x", ("y", group.identity): "y", ("x", g): "x", ("y", g): "x"})


def test_orbit_space_examples():
    assert len(orbit_space(pair(3)).blocks) == 1
    assert len(orbit_space(disjoint_union(pair(2), point())).blocks) == 2
    assert len(orbit_space(builders()["two_cycles"]).blocks) == 2


@pytest.mark.parametrize("name", sorted(builders()))
def test_orbits_match_reachability(name):
    G = builders()[name]
    expected = orbit_blocks(G.objects, [(G.dom[g], G.cod[g]) for g in G.morphisms])
    blocks = orbit_space(G).blocks
    assert sorted(tuple(b) for b in blocks) == expected
    assert [b[0] for b in blocks] == sorted(b[0] for b in blocks)
    assert orbit_space(effect(G)[0]).blocks == blocks


def test_vertex_groups():
    for n in (1, 2, 4):
        assert all(vertex_group(pair(n), a).order == 1 for a in pair(n).objects)
    for k in (2, 3, 5):
        assert vertex_group(cyclic(k), "*").order == k
    group = cyclic_group(2)
    fixed = action(group, ["1"], {("1", g): "1" for g in group.elements})
    assert vertex_group(fixed, "1").order == 2
    with pytest.raises(NoSuchObject):
        vertex_group(pair(2), "nope")


@pytest.mark.parametrize("name", sorted(builders()))
def test_vertex_groups_isomorphic_along_orbits(name):
    G = builders()[name]
    for block in orbit_space(G).blocks:
        first = vertex_group(G, block[0])
        for a in block[1:]:
            assert find_group_isomorphism(first, vertex_group(G, a)) is not None


@pytest.mark.parametrize("name", sorted(builders()))
def test_effect_is_idempotent(name):
    G = builders()[name]
    E, psi = effect(G)
    E2, _ = effect(E)
    assert E2 == E
    for a in E.objects:
        for b in E.objects:
            assert len(E.hom(a, b)) <= 1
    assert groupoid_law_failures(E) == []
    assert all(psi.mor_map[g] in E.hom(G.dom[g], G.cod[g]) for g in G.morphisms)


def test_effect_examples():
    assert effect(pair(3))[0] == pair(3)
    E, psi = effect(cyclic(4))
    assert len(E.morphisms) == 1 and len(set(psi.mor_map.values())) == 1
    E, _ = effect(corpus.swap_groupoid())
    assert E.summary() == pair(["x", "y"]).summary()


def test_essential_equivalence_examples():
    P = point()
    for n in (2, 3, 4):
        G = pair(n)
        incl = GroupoidFunctor(P, G, {"*": "0"}, {P.unit["*"]: G.unit["0"]})
        assert is_essential_equivalence(incl)
    assert is_essential_equivalence(identity_functor(cyclic(3)))
    v = is_essential_equivalence(corpus.functors()["cyclic2_to_point"])
    assert not v
    assert v.witness["source_size"] == 2 and v.witness["target_size"] == 1


def test_essential_equivalence_rejects_mismatched_tables():
    G = pair(2)
    with pytest.raises(SourceTargetMismatch):
        is_essential_equivalence(GroupoidFunctor(G, G, {"0": "0"}, {}))


@st.composite
def permutation_actions(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    points = [str(i) for i in range(n)]
    gens = []
    for _ in range(draw(st.integers(min_value=1, max_value=2))):
        perm = draw(st.permutations(points))
        gens.append(dict(zip(points, perm)))
    return points, gens


@settings(max_examples=40, deadline=None)
@given(permutation_actions())
def test_random_action_groupoids(data):
    points, gens = data
    group, perms = permutation_group(gens, points)
    G = action(group, points, {(x, g): perms[g][x] for x in points for g in group.elements})
    assert groupoid_law_failures(G) == []
    edges = [(x, gen[x]) for gen in gens for x in points]
    assert sorted(tuple(b) for b in orbit_space(G).blocks) == orbit_blocks(points, edges)
    for block in orbit_space(G).blocks:
        assert len(block) * vertex_group(G, block[0]).order == group.order


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data())
def test_random_corruption_is_detected(k, data):
    objs, mors, unit, inv, comp = tables(product(pair(2), cyclic(k + 1)))
    keys = sorted(comp)
    key = data.draw(st.sampled_from(keys))
    same_ends = [g for g in sorted(mors) if mors[g] == (mors[key[1]][0], mors[key[0]][1])]
    wrong = [g for g in same_ends if g != comp[key]]
    if not wrong:
        return
    comp[key] = data.draw(st.sampled_from(wrong))
    with pytest.raises(ValidationError) as exc:
        make_groupoid(objs, mors, unit, inv, comp)
    assert exc.value.kinds() & {"NonAssociative", "MissingUnit", "BadInverse"}
