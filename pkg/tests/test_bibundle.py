from __future__ import annotations

from itertools import product as cartesian

import pytest

from groupoidal import corpus
from groupoidal.bibundle import (
    amalgamate,
    angs,
    are_isomorphic,
    check_equivariant,
    classify_bundle,
    functor_from_section,
    invert,
    make_bibundle,
    morita_equivalent,
    restrict,
    sections,
    tensor,
    unit_bibundle,
)
from groupoidal.cocycles import base_groupoid, circle_cover, circle_cocycle, sigma
from groupoidal.errors import (
    CocycleViolation,
    GroupoidMismatch,
    NotACover,
    NotInvariant,
    NotInvertible,
    SearchBudgetExceeded,
    ValidationError,
)
from groupoidal.groupoid import (
    GroupoidFunctor,
    cyclic,
    discrete_set,
    disjoint_union,
    identity_functor,
    is_essential_equivalence,
    make_functor,
    pair,
    point,
)

from oracles import tensor_size


def composable(items):
    return [(a, b) for a in items for b in items if items[a].right == items[b].left]


def test_unit_bundle_and_angs_are_principal():
    for G in corpus.groupoids().values():
        assert classify_bundle(unit_bibundle(G)).principal
    for phi in corpus.functors().values():
        assert classify_bundle(angs(phi)).principal


def test_two_points_over_point_is_neither():
    P = point()
    u = P.unit["*"]
    E = make_bibundle(
        P,
        point(),
        ["a", "b"],
        {"a": "*", "b": "*"},
        {"a": "*", "b": "*"},
        {(u, "a"): "a", (u, "b"): "b"},
        {("a", u): "a", ("b", u): "b"},
    )
    c = classify_bundle(E)
    assert (c.principal, c.transitive) == (False, False)


def test_bibundle_axiom_violation_named():
    G = cyclic(2)
    P = point()
    u = P.unit["*"]
    with pytest.raises(ValidationError):
        make_bibundle(G, P, ["e"], {"e": "*"}, {"e": "*"}, {("0", "e"): "e"}, {("e", u): "e"})


def test_angs_sizes():
    assert len(angs(identity_functor(cyclic(3))).total) == 3
    assert are_isomorphic(angs(identity_functor(cyclic(3))), unit_bibundle(cyclic(3))) is not None
    assert len(angs(corpus.functors()["point_to_pair2"]).total) == 2
    assert len(angs(corpus.functors()["pair2_to_point"]).total) == 2


@pytest.mark.parametrize("pair_names", composable(corpus.bibundles()), ids=lambda p: f"{p[0]}*{p[1]}")
def test_tensor_size_matches_orbit_count(pair_names):
    B = corpus.bibundles()
    E, F = B[pair_names[0]], B[pair_names[1]]
    assert len(tensor(E, F).total) == tensor_size(E, F)


def test_tensor_mismatch():
    with pytest.raises(GroupoidMismatch):
        tensor(unit_bibundle(pair(2)), unit_bibundle(cyclic(2)))


def test_point_pair_tensor_sizes():
    f = corpus.functors()
    E, F = angs(f["point_to_pair2"]), angs(f["pair2_to_point"])
    assert len(tensor(F, E).total) == tensor_size(F, E) == 1
    assert len(tensor(E, F).total) == tensor_size(E, F) == 4


def test_iso_identity_and_conjugate():
    B = corpus.bibundles()
    E = B["angs(cyclic3_to_s3)"]
    f = are_isomorphic(E, E)
    assert f is not None and check_equivariant(E, E, f.map, bijective=True) == []
    S3 = corpus.groupoids()["s3"]
    phi = corpus.functors()["cyclic3_to_s3"]
    t = next(g for g in S3.morphisms if S3.compose(g, g) == S3.unit["*"] and g != S3.unit["*"])
    conj = make_functor(
        phi.source,
        S3,
        dict(phi.obj_map),
        {h: S3.compose_path(t, g, S3.inv[t]) for h, g in phi.mor_map.items()},
    )
    assert conj.mor_map != phi.mor_map
    assert are_isomorphic(angs(phi), angs(conj)) is not None


def test_twisted_circle_bundle_not_product():
    C2 = cyclic(2)
    twisted, trivial = sigma(circle_cocycle(C2, "1")), sigma(circle_cocycle(C2, "0"))
    assert len(twisted.total) == len(trivial.total) == 8
    assert are_isomorphic(twisted, trivial) is None


def test_budget_exceeded():
    E = corpus.bibundles()["unit(s3)"]
    with pytest.raises(SearchBudgetExceeded) as exc:
        are_isomorphic(E, E, budget=0)
    assert exc.value.budget == 0


def test_invert_exactly_on_essential_equivalences():
    for name, phi in corpus.functors().items():
        E = angs(phi)
        if is_essential_equivalence(phi):
            inv = invert(E)
            assert are_isomorphic(tensor(E, inv), unit_bibundle(phi.target)) is not None
            assert are_isomorphic(tensor(inv, E), unit_bibundle(phi.source)) is not None
            assert are_isomorphic(invert(inv), E) is not None
        else:
            with pytest.raises(NotInvertible):
                invert(E)


def test_invert_unit_and_cyclic_quotient():
    U = unit_bibundle(pair(3))
    assert are_isomorphic(invert(U), U) is not None
    with pytest.raises(NotInvertible):
        invert(angs(corpus.functors()["cyclic2_to_point"]))


def test_restrict():
    U = unit_bibundle(disjoint_union(pair(2), point()))
    H = U.right
    assert restrict(U, H.objects) == U
    first = [o for o in H.objects if o.startswith("(0,")]
    R = restrict(U, first)
    assert set(R.total) == {e for e in U.total if U.w[e] in first}
    assert classify_bundle(R).principal
    assert restrict(U, []).total == ()
    with pytest.raises(NotInvariant):
        restrict(U, first[:1])


def test_amalgamate_trivial_cases():
    E = unit_bibundle(pair(3))
    H = E.right
    A = amalgamate(H, [(H.objects, E)], {})
    assert are_isomorphic(A, E) is not None
    D = discrete_set(["a", "b", "c"])
    U = unit_bibundle(D)
    pieces = [({"a", "b"}, restrict(U, {"a", "b"})), ({"b", "c"}, restrict(U, {"b", "c"}))]
    glue = {(0, 1): {e: e for e in U.total if U.w[e] == "b"}}
    assert are_isomorphic(amalgamate(D, pieces, glue), U) is not None
    with pytest.raises(NotACover):
        amalgamate(D, pieces[:1], {})


def test_amalgamate_cocycle_violation():
    D = discrete_set(["b"])
    C2 = cyclic(2)
    E = make_bibundle(
        C2,
        D,
        ["x", "y"],
        {"x": "*", "y": "*"},
        {"x": "b", "y": "b"},
        {("0", "x"): "x", ("1", "x"): "y", ("0", "y"): "y", ("1", "y"): "x"},
        {("x", D.unit["b"]): "x", ("y", D.unit["b"]): "y"},
    )
    swap = {"x": "y", "y": "x"}
    ident = {"x": "x", "y": "y"}
    pieces = [({"b"}, E)] * 3
    glue = {(0, 1): swap, (1, 2): swap, (0, 2): swap, (1, 0): swap, (2, 1): swap, (2, 0): swap}
    with pytest.raises(CocycleViolation):
        amalgamate(D, pieces, glue)
    glue_ok = {(0, 1): swap, (1, 2): swap, (0, 2): ident}
    assert len(amalgamate(D, pieces, glue_ok).total) == 2


def test_amalgamated_twist_matches_sigma():
    C2 = cyclic(2)
    product_bundle = sigma(circle_cocycle(C2, "0"))
    cover = circle_cover()
    H = base_groupoid(cover.space)
    assert H.objects == product_bundle.right.objects
    pieces = [(U, restrict(product_bundle, U)) for U in cover.pieces]
    overlap = cover.pieces[0] & cover.pieces[1]
    twist = {
        e: e if product_bundle.w[e] == "a" else product_bundle.act_left("1", e)
        for e in product_bundle.total
        if product_bundle.w[e] in overlap
    }
    glued = amalgamate(H, pieces, {(0, 1): twist})
    assert are_isomorphic(glued, sigma(circle_cocycle(C2, "1"))) is not None
    assert are_isomorphic(glued, product_bundle) is None
    plain = amalgamate(H, pieces, {(0, 1): {e: e for e in twist}})
    assert are_isomorphic(plain, product_bundle) is not None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_morita_pair_point(n):
    v = morita_equivalent(pair(n), point())
    assert v.equivalent
    W = v.witness
    assert len(W.total) == n
    assert are_isomorphic(tensor(W, invert(W)), unit_bibundle(pair(n))) is not None


def test_morita_negative_and_swap():
    v = morita_equivalent(cyclic(2), cyclic(3))
    assert not v and v.reason["invariant"] == "vertex group"
    assert morita_equivalent(corpus.swap_groupoid(), point())
    assert not morita_equivalent(pair(2), discrete_set(2))


@pytest.mark.parametrize("name", sorted(n for n, E in corpus.bibundles().items() if len(E.total) <= 12))
def test_section_characterization(name):
    """E ≅ angs(phi) for some functor exactly when a section yields one."""
    E = corpus.bibundles()[name]
    if not classify_bundle(E).principal or any(not E.w_fiber(b) for b in E.right.objects):
        return
    found = None
    for s in sections(E):
        phi = functor_from_section(E, s)
        if are_isomorphic(angs(phi), E) is not None:
            found = phi
            break
    assert found is not None


def test_tensor_preserves_principal_and_transitive():
    B = corpus.bibundles()
    for a, b in composable(B):
        E, F = B[a], B[b]
        ce, cf = classify_bundle(E), classify_bundle(F)
        ct = classify_bundle(tensor(E, F))
        if ce.principal and cf.principal:
            assert ct.principal, (a, b)
        if ce.transitive and cf.transitive:
            assert ct.transitive, (a, b)


def test_functor_composition_brute_force():
    F = corpus.functors()
    for (a, phi), (b, psi) in cartesian(F.items(), F.items()):
        if phi.target != psi.source:
            continue
        composite = psi.after(phi)
        assert isinstance(composite, GroupoidFunctor)
        assert are_isomorphic(tensor(angs(psi), angs(phi)), angs(composite)) is not None, (a, b)
