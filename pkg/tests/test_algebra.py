from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoidal import corpus
from groupoidal.algebra import (
    GroupoidAlgebra,
    algebra_morita_check,
    balanced_tensor,
    bimodule_isomorphism,
    bimodule_of_bibundle,
    composition_check,
    delta,
    intertwines,
    mho_iso_check,
    regular_bimodule,
    wp,
    wp_associativity_failures,
    zero_bimodule,
)
from groupoidal.bibundle import classify_bundle, tensor, tensor_with_classes, unit_bibundle
from groupoidal.errors import AlgebraMismatch, NotEquivalent, NotPrincipal
from groupoidal.groupoid import cyclic, pair, pid, point

import oracles


def principal_bundles():
    return {k: E for k, E in corpus.bibundles().items() if classify_bundle(E).principal and not E.is_topological}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pair_algebra_matrix_units(n):
    A = GroupoidAlgebra(pair(n))
    assert A.dim == n * n
    objs = [str(i) for i in range(n)]
    for i in objs:
        for j in objs:
            for k in objs:
                for l in objs:
                    got = A.mul(delta(pid(i, j)), delta(pid(k, l)))
                    assert got == ({pid(i, l): Fraction(1)} if j == k else {})


@pytest.mark.parametrize("name", sorted(corpus.groupoids()))
def test_structure_constants_match_brute_convolution(name):
    G = corpus.groupoids()[name]
    A = GroupoidAlgebra(G)
    for a in A.basis:
        for b in A.basis:
            assert A.structure[(a, b)] == oracles.convolution(G, {a: 1}, {b: 1})
    assert A.associativity_failures() == []


def test_cyclic_and_point_algebras():
    for k in (2, 3, 5):
        A = GroupoidAlgebra(cyclic(k))
        assert A.dim == k
        assert all(A.structure[(a, b)] == A.structure[(b, a)] for a in A.basis for b in A.basis)
    P = GroupoidAlgebra(point())
    u = delta(P.basis[0])
    assert P.dim == 1 and P.mul(u, u) == u


coefficient = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(corpus.groupoids())), st.data())
def test_local_units(name, data):
    A = GroupoidAlgebra(corpus.groupoids()[name])
    elements = [
        {g: c for g, c in data.draw(st.dictionaries(st.sampled_from(A.basis), coefficient, max_size=4)).items() if c}
        for _ in range(data.draw(st.integers(min_value=1, max_value=3)))
    ]
    u = A.local_unit(elements)
    for x in elements:
        assert A.mul(u, x) == x and A.mul(x, u) == x
        assert A.multiply(u, x) == A.mul(u, x)


def test_wp_on_unit_bundles_is_convolution():
    G = cyclic(3)
    U = unit_bibundle(G)
    T = tensor_with_classes(U, U)
    A = GroupoidAlgebra(G)
    for a in G.morphisms:
        for b in G.morphisms:
            pairing = wp(U, U, delta(a), delta(b), T)
            conv = A.mul(delta(a), delta(b))
            for g in G.morphisms:
                assert pairing.get(T.class_of[(G.unit[G.cod[g]], g)], Fraction(0)) == conv.get(g, Fraction(0))


def test_wp_disjoint_support_is_zero():
    E = unit_bibundle(pair(2))
    e = pid("0", "0")
    f = pid("1", "1")
    assert wp(E, E, delta(e), delta(f)) == {}


def test_wp_mismatch():
    with pytest.raises(Exception):
        wp(unit_bibundle(pair(2)), unit_bibundle(cyclic(2)), {}, {})


def composable_triples(items):
    return [
        (a, b, c)
        for a in items
        for b in items
        for c in items
        if items[a].right == items[b].left and items[b].right == items[c].left
    ]


def random_function(rng, E):
    support = rng.sample(list(E.total), k=min(len(E.total), rng.randint(1, 3)))
    return {e: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for e in support}


def test_wp_associativity_random_triples():
    B = principal_bundles()
    triples = composable_triples(B)
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = rng.choice(triples)
        E, F, K = B[a], B[b], B[c]
        assert wp_associativity_failures(E, F, K, random_function(rng, E), random_function(rng, F), random_function(rng, K)) == []


@pytest.mark.parametrize("name", sorted(principal_bundles()))
def test_bimodule_axioms(name):
    E = principal_bundles()[name]
    M = bimodule_of_bibundle(E)
    assert M.dim == len(E.total)
    assert M.axiom_failures() == []
    elements = [delta(e) for e in E.total[:3]]
    x, y = M.local_units(elements)
    for m in elements:
        assert M.act_left(x, m) == m and M.act_right(m, y) == m


def test_bimodule_needs_principal():
    with pytest.raises(NotPrincipal):
        bimodule_of_bibundle(corpus.bibundles()["orbit(cyclic2)"])


def test_column_bimodule():
    E = corpus.bibundles()["inv(point_to_pair3)"]
    M = bimodule_of_bibundle(E)
    assert M.dim == 3 and M.left.dim == 1 and M.right.dim == 9


def test_unit_bundle_gives_regular_bimodule():
    G = cyclic(2)
    M = bimodule_of_bibundle(unit_bibundle(G))
    R = regular_bimodule(G, M.left)
    X = bimodule_isomorphism(M, R)
    assert X is not None and intertwines(M, R, X)


@pytest.mark.parametrize("name", sorted(principal_bundles()))
def test_tensor_with_regular_is_identity(name):
    E = principal_bundles()[name]
    if len(E.total) > 8:
        return
    M = bimodule_of_bibundle(E)
    R = regular_bimodule(E.right, M.right)
    BT = balanced_tensor(M, R)
    assert BT.bimodule.dim == M.dim
    X = bimodule_isomorphism(BT.bimodule, M)
    assert X is not None and intertwines(BT.bimodule, M, X)


def test_zero_module_and_mismatch():
    E = principal_bundles()["angs(id_pair3)"]
    M = bimodule_of_bibundle(E)
    Z = zero_bimodule(M.right, M.right)
    assert balanced_tensor(M, Z).bimodule.dim == 0
    with pytest.raises(AlgebraMismatch):
        balanced_tensor(M, bimodule_of_bibundle(unit_bibundle(cyclic(2))))


def small_pairs():
    B = principal_bundles()
    return [(a, b) for a in B for b in B if B[a].right == B[b].left and len(B[a].total) <= 6 and len(B[b].total) <= 6]


@pytest.mark.parametrize("pair_names", small_pairs(), ids=lambda p: f"{p[0]}*{p[1]}")
def test_mho_and_dimension(pair_names):
    B = principal_bundles()
    E, F = B[pair_names[0]], B[pair_names[1]]
    report = mho_iso_check(E, F)
    assert report.holds, report.to_json()
    assert report.dim_lhs == len(tensor(E, F).total) == oracles.tensor_size(E, F)


def test_mho_examples():
    U = unit_bibundle(cyclic(3))
    r = mho_iso_check(U, U)
    assert (r.dim_lhs, r.dim_rhs, r.holds) == (3, 3, True)
    E = principal_bundles()["angs(point_to_pair3)"]
    Einv = principal_bundles()["inv(point_to_pair3)"]
    r = mho_iso_check(E, Einv)
    assert (r.dim_lhs, r.dim_rhs, r.holds) == (9, 9, True)


def test_composition_on_chains():
    B = principal_bundles()
    for a, b in [("angs(point_to_pair3)", "inv(point_to_pair3)"), ("angs(pair2_to_swap)", "angs(point_to_pair2)")]:
        assert composition_check(B[a], B[b])
    E, F, K = B["angs(point_to_pair2)"], B["angs(pair2_to_point)"], B["angs(point_to_pair2)"]
    M = bimodule_of_bibundle(E)
    N = bimodule_of_bibundle(F, M.right)
    L = bimodule_of_bibundle(K, N.right)
    left = balanced_tensor(balanced_tensor(M, N).bimodule, L).bimodule
    target = bimodule_of_bibundle(tensor(tensor(E, F), K), M.left, L.right)
    assert bimodule_isomorphism(left, target) is not None


def test_algebra_morita():
    r = algebra_morita_check(pair(3), point())
    assert r.holds and r.forward.dim == 3 and r.backward.dim == 3
    assert algebra_morita_check(cyclic(2), cyclic(2)).holds
    with pytest.raises(NotEquivalent):
        algebra_morita_check(cyclic(2), cyclic(3))
