from __future__ import annotations

import pytest

from groupoidal import corpus
from groupoidal.bibundle import angs, classify_bundle, unit_bibundle
from groupoidal.errors import NotLiftable, NotPrincipal, NotTransitive
from groupoidal.groupoid import cyclic, discrete_set, identity_functor, make_functor, pair, point
from groupoidal.leaves import (
    HLoop,
    angs_base_element,
    angs_holonomy,
    components,
    conjugacy_check,
    effect_pushforward,
    functor_pushforward,
    holonomy_is_free,
    holonomy_of_loop,
    leaves,
    pushforward_holonomy_check,
    quotient_leaf_check,
    short_loops,
)


def discrete_bundles():
    return {k: E for k, E in corpus.bibundles().items() if not E.is_topological}


def test_unit_pair3_has_one_leaf():
    (leaf,) = leaves(unit_bibundle(pair(3)))
    assert leaf.underlying == ("0", "1", "2")
    assert leaf.holonomy.order == 1


def test_identity_cyclic2_leaf_has_full_holonomy():
    (leaf,) = leaves(angs(identity_functor(cyclic(2))))
    assert len(leaf.component) == 2
    assert leaf.holonomy.order == 2


def test_discrete_to_point_has_two_leaves():
    D = discrete_set(["a", "b"])
    P = point()
    phi = make_functor(D, P, {"a": "*", "b": "*"}, {g: P.unit["*"] for g in D.morphisms})
    out = leaves(angs(phi))
    assert [leaf.underlying for leaf in out] == [("a",), ("b",)]
    assert all(leaf.holonomy.order == 1 for leaf in out)


def test_leaves_need_transitive():
    with pytest.raises(NotTransitive):
        leaves(corpus.bibundles()["orbit(pair2+cyclic2)"])


def brute_component(E, e):
    """Closure of ``{e}`` under the right action, by repeated sweeps."""
    comp = {e}
    while True:
        grown = comp | {E.act_right(x, h) for x in comp for h in E.right.ending_at(E.w[x])}
        if grown == comp:
            return comp
        comp = grown


@pytest.mark.parametrize("name", sorted(discrete_bundles()))
def test_components_and_holonomy_brute_force(name):
    E = discrete_bundles()[name]
    comps = components(E)
    assert sorted(e for c in comps for e in c.elements) == sorted(E.total)
    for c in comps:
        assert set(c.elements) == brute_component(E, c.elements[0])
        preserving = {
            g for g in E.left.hom(c.fiber_object, c.fiber_object) if {E.act_left(g, x) for x in c.elements} == set(c.elements)
        }
        assert set(c.holonomy) == preserving


@pytest.mark.parametrize("name", sorted(discrete_bundles()))
def test_leaf_properties_on_corpus(name):
    E = discrete_bundles()[name]
    c = classify_bundle(E)
    if c.principal:
        assert all(r.maps_component and r.conjugates_holonomy for r in conjugacy_check(E))
        assert holonomy_is_free(E)
    assert all(r.blocks_agree and r.holonomy_agrees for r in quotient_leaf_check(E))
    if c.transitive:
        blocks = [set(leaf.underlying) for leaf in leaves(E)]
        assert sorted(b for blk in blocks for b in blk) == sorted(E.right.objects)


@pytest.mark.parametrize("name", sorted(corpus.functors()))
def test_angs_holonomy_formula(name):
    phi = corpus.functors()[name]
    E = angs(phi)
    for b in phi.source.objects:
        e = angs_base_element(phi, b)
        for loop in short_loops(phi.source, b, 2):
            assert holonomy_of_loop(E, e, loop) == angs_holonomy(phi, loop)
            if len(loop.steps) == 2:
                first, second = HLoop(b, loop.steps[:1]), HLoop(b, loop.steps[1:])
                if phi.source.cod[loop.steps[0]] == b:
                    G = phi.target
                    assert holonomy_of_loop(E, e, loop) == G.compose(
                        holonomy_of_loop(E, e, second), holonomy_of_loop(E, e, first)
                    )


def test_empty_loop_and_errors():
    E = angs(identity_functor(cyclic(3)))
    e = E.total[0]
    assert holonomy_of_loop(E, e, HLoop(E.w[e], ())) == cyclic(3).unit["*"]
    P2 = pair(2)
    U = unit_bibundle(P2)
    e = next(x for x in U.total if U.w[x] == "0")
    with pytest.raises(NotLiftable):
        holonomy_of_loop(U, e, HLoop("0", (next(iter(P2.hom("0", "1"))),)))
    with pytest.raises(NotPrincipal):
        holonomy_of_loop(corpus.bibundles()["orbit(cyclic2)"], "*", HLoop("*", ()))


@pytest.mark.parametrize("name", sorted(n for n, E in discrete_bundles().items() if classify_bundle(E).principal))
def test_effect_pushforward_equivariance(name):
    E = discrete_bundles()[name]
    F, alpha, psi = effect_pushforward(E)
    checks = pushforward_holonomy_check(alpha, E, F, psi, max_len=2)
    assert checks and all(c.holds for c in checks)
    assert all(c.rhs in F.left.morphisms for c in checks)


def test_pushforward_identity_and_collapse():
    E = angs(identity_functor(cyclic(2)))
    checks = pushforward_holonomy_check({e: e for e in E.total}, E, E, identity_functor(cyclic(2)))
    assert all(c.holds for c in checks)
    collapse = corpus.functors()["cyclic2_to_point"]
    F, alpha = functor_pushforward(collapse, E)
    checks = pushforward_holonomy_check(alpha, E, F, collapse)
    assert all(c.holds and c.rhs == point().unit["*"] for c in checks)
