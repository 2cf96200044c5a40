"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from pathlib import Path

from groupoidal import corpus
from groupoidal.algebra import (
    GroupoidAlgebra,
    algebra_morita_check,
    balanced_tensor,
    delta,
    intertwines,
    mho_iso_check,
    regular_bimodule,
    wp_associativity_failures,
)
from groupoidal.bibundle import (
    angs,
    are_isomorphic,
    classify_bundle,
    invert,
    morita_equivalent,
    tensor,
    unit_bibundle,
)
from groupoidal.cocycles import cohomologous, extract_cocycle, is_intertwiner, minimal_open_cover, refine, refinement_choices, sigma
from groupoidal.errors import NotEquivalent, NotInvertible, ValidationError
from groupoidal.fundamental import abelianization, coset_enumeration, pi1_action_groupoid, pi1_discrete
from groupoidal.groupoid import cyclic, is_essential_equivalence, make_groupoid, pair, pid, point
from groupoidal.homology import (
    balanced_homology,
    balanced_les,
    chain_model,
    coefficient_les,
    effect_homology_check,
    groupoid_homology,
    mayer_vietoris_check,
    short_exact_reports,
)
from groupoidal.intlinalg import AbelianGroupDescriptor, IntMatrix
from groupoidal.leaves import (
    angs_base_element,
    angs_holonomy,
    conjugacy_check,
    effect_pushforward,
    holonomy_is_free,
    holonomy_of_loop,
    pushforward_holonomy_check,
    quotient_leaf_check,
    short_loops,
)
from groupoidal.simplicial import rot

import oracles
from test_groupoid import builders, tables
from test_io_cli import CLI_CASES

BUDGET = 10**6
ROOT = Path(__file__).resolve().parent.parent


def verdict(label: str, failures: list, detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"\n[{status}] {label}: {detail or f'{len(failures)} failure(s)'}")
    assert not failures, failures[:5]


def iso(E, F) -> bool:
    return are_isomorphic(E, F, BUDGET) is not None


def composable_pairs(items):
    return [(a, b) for a in items for b in items if items[a].right == items[b].left]


def test_ac01_axiom_suites():
    failures = []
    groupoids = builders()
    triples = 0
    for name, G in groupoids.items():
        if oracles.groupoid_law_failures(G):
            failures.append(name)
        triples += sum(1 for g in G.morphisms for h in G.starting_at(G.cod[g]) for k in G.starting_at(G.cod[h]))
        make_groupoid(*tables(G))

    def named(corrupt, base, kind):
        objs, mors, unit, inv, comp = tables(base)
        corrupt(objs, mors, unit, inv, comp)
        try:
            make_groupoid(objs, mors, unit, inv, comp)
        except ValidationError as exc:
            if kind in exc.kinds():
                return
        failures.append(kind)

    def bad_codomain(objs, mors, unit, inv, comp):
        g2, g1 = next(k for k in comp if mors[k[1]][0] != mors[k[1]][1])
        comp[(g2, g1)] = unit[mors[g1][1]]

    named(bad_codomain, pair(2), "DomCodMismatch")
    named(lambda o, m, u, i, c: c.__setitem__(("1", "1"), "1"), cyclic(3), "NonAssociative")
    named(lambda o, m, u, i, c: u.__setitem__("*", "1"), cyclic(3), "MissingUnit")
    named(lambda o, m, u, i, c: i.__setitem__("1", "1"), cyclic(3), "BadInverse")
    named(lambda o, m, u, i, c: c.pop(next(iter(c))), pair(2), "MissingComposite")
    verdict("AC1 axiom suites", failures, f"{len(groupoids)} groupoids, {triples} composable triples, 5 named corruptions")


def test_ac02_category_laws():
    functors = corpus.functors()
    groupoids = {(G.objects, G.morphisms, tuple(sorted(G.comp.items()))) for phi in functors.values() for G in (phi.source, phi.target)}
    assert len(functors) >= 10 and len(groupoids) >= 6
    failures = []
    checked = 0
    for a, phi in functors.items():
        for b, psi in functors.items():
            if phi.target == psi.source:
                checked += 1
                if not iso(tensor(angs(psi), angs(phi)), angs(psi.after(phi))):
                    failures.append(("compose", a, b))
    bundles = corpus.bibundles()
    for name, E in bundles.items():
        if not (iso(tensor(unit_bibundle(E.left), E), E) and iso(tensor(E, unit_bibundle(E.right)), E)):
            failures.append(("unit", name))
    triples = 0
    for a, b in composable_pairs(bundles):
        for c in bundles:
            if bundles[b].right != bundles[c].left:
                continue
            E, F, K = bundles[a], bundles[b], bundles[c]
            triples += 1
            if not iso(tensor(tensor(E, F), K), tensor(E, tensor(F, K))):
                failures.append(("assoc", a, b, c))
    verdict(
        "AC2 category laws",
        failures,
        f"{checked} functor composites, {len(bundles)} unit pairs, {triples} associativity triples, budget {BUDGET}",
    )


def test_ac03_tensor_preserves_classes():
    bundles = corpus.bibundles()
    failures = []
    pairs = composable_pairs(bundles)
    for a, b in pairs:
        ce, cf = classify_bundle(bundles[a]), classify_bundle(bundles[b])
        ct = classify_bundle(tensor(bundles[a], bundles[b]))
        if (ce.principal and cf.principal and not ct.principal) or (ce.transitive and cf.transitive and not ct.transitive):
            failures.append((a, b))
    verdict("AC3 principal/transitive preserved", failures, f"{len(pairs)} composable pairs")


def test_ac04_invert_and_morita():
    failures = []
    for name, phi in corpus.functors().items():
        E = angs(phi)
        try:
            inv = invert(E, budget=BUDGET)
        except NotInvertible:
            inv = None
        if bool(is_essential_equivalence(phi)) != (inv is not None):
            failures.append(("invert", name))
        elif inv is not None and not (
            iso(tensor(E, inv), unit_bibundle(phi.target)) and iso(tensor(inv, E), unit_bibundle(phi.source))
        ):
            failures.append(("round trip", name))
    for n in range(1, 6):
        v = morita_equivalent(pair(n), point(), BUDGET)
        W = v.witness if v.equivalent else None
        if W is None or not (
            iso(tensor(W, invert(W)), unit_bibundle(pair(n))) and iso(tensor(invert(W), W), unit_bibundle(point()))
        ):
            failures.append(("pair", n))
    if morita_equivalent(cyclic(2), cyclic(3), BUDGET).equivalent:
        failures.append("cyclic2~cyclic3")
    verdict("AC4 invert and Morita", failures, f"{len(corpus.functors())} functors, pair(n)~point n<=5, cyclic2!~cyclic3")


def test_ac05_cocycle_round_trips():
    cocycle_items = corpus.cocycles()
    assert len(cocycle_items) >= 5 and "circle_twisted" in cocycle_items
    failures = []
    for name, c in cocycle_items.items():
        S = sigma(c)
        extracted = extract_cocycle(S)
        if not iso(sigma(extracted), S):
            failures.append(("sigma.extract", name))
        fine = minimal_open_cover(c.cover.space)
        c_fine = refine(c, fine, refinement_choices(fine, c.cover)[0])
        b = cohomologous(c_fine, extracted)
        if b is None or not is_intertwiner(c_fine, extracted, b):
            failures.append(("extract.sigma", name))
    if iso(sigma(cocycle_items["circle_twisted"]), sigma(cocycle_items["circle_trivial"])):
        failures.append("twisted ~ trivial")
    verdict("AC5 cocycle round trips", failures, f"{len(cocycle_items)} cocycles, twisted vs trivial distinct")


def test_ac06_leaves_and_holonomy():
    failures = []
    bundles = corpus.bibundles()
    loops = 0
    for name, E in bundles.items():
        c = classify_bundle(E)
        if c.principal:
            if not all(r.maps_component and r.conjugates_holonomy for r in conjugacy_check(E)):
                failures.append(("conjugacy", name))
            if not holonomy_is_free(E):
                failures.append(("freeness", name))
            F, alpha, psi = effect_pushforward(E)
            checks = pushforward_holonomy_check(alpha, E, F, psi, max_len=2)
            loops += len(checks)
            if not all(r.holds for r in checks):
                failures.append(("pushforward", name))
        if not all(r.blocks_agree and r.holonomy_agrees for r in quotient_leaf_check(E)):
            failures.append(("quotient", name))
    for name, phi in corpus.functors().items():
        E = angs(phi)
        for b in phi.source.objects:
            e = angs_base_element(phi, b)
            for loop in short_loops(phi.source, b, 2):
                if holonomy_of_loop(E, e, loop) != angs_holonomy(phi, loop):
                    failures.append(("formula", name, loop))
    verdict("AC6 leaves and holonomy", failures, f"{len(bundles)} bundles, {loops} pushforward loop identities")


def test_ac07_homology_values():
    start = time.perf_counter()
    failures = []
    expected_point = [AbelianGroupDescriptor(1)] + [AbelianGroupDescriptor(0)] * 3
    for k in (2, 3, 5):
        if [groupoid_homology(cyclic(k), n) for n in range(4)] != expected_point:
            failures.append(("cyclic", k))
    for k, m in ((2, 3), (3, 3), (4, 3)):
        SG = rot(k, m)
        # the quotient is an m-cycle graph, built here from scratch
        edges = [(f"v{i}", f"v{(i + 1) % m}") for i in range(m)]
        oracle = oracles.complex_homology(edges)
        got = [groupoid_homology(SG, n) for n in range(3)]
        if [(d.rank, tuple(d.torsion)) for d in got] != [oracle[0], oracle[1], (0, ())]:
            failures.append(("rot", k, m))
        if balanced_homology(SG, 0) != AbelianGroupDescriptor(0, (k,)):
            failures.append(("BH0", k, m))
    elapsed = time.perf_counter() - start
    if elapsed >= 5.0:
        failures.append(("runtime", elapsed))
    verdict("AC7 homology values", failures, f"runtime {elapsed:.2f}s < 5s")


def test_ac08_exactness():
    failures = []
    inputs = {**corpus.groupoids(), **corpus.action_groupoids()}
    for name, X in inputs.items():
        if not all(r.exact and r.splits for r in short_exact_reports(chain_model(X))):
            failures.append(("ses", name))
    les_count = 0
    for name, X in inputs.items():
        for A in ("Z", "Z/2"):
            les_count += 1
            if not balanced_les(X, AbelianGroupDescriptor.parse(A)).all_exact:
                failures.append(("les", name, A))
    mv = corpus.mayer_vietoris_instances()
    assert len(mv) >= 3
    for name, X, U, V in mv:
        if not mayer_vietoris_check(X, U, V).exact:
            failures.append(("mv", name))
    Z = AbelianGroupDescriptor(1)
    les = coefficient_les(rot(2, 3), Z, Z, AbelianGroupDescriptor.parse("Z/2"), IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[1]]))
    if not les.all_exact:
        failures.append("coefficient les")
    verdict("AC8 exactness", failures, f"{len(inputs)} SES inputs, {les_count} balanced LES, {len(mv)} MV, Z->Z->Z/2 on Rot(2,3)")


def test_ac09_effect_homology():
    failures = []
    for name, G in corpus.groupoids().items():
        r = effect_homology_check(G)
        if not r.holds or r.groupoid != r.effect:
            failures.append(name)
    verdict("AC9 effect homology", failures, f"{len(corpus.groupoids())} discrete groupoids, degrees 0..3")


def test_ac10_fundamental_group():
    failures = []
    for k in (1, 2, 3, 5):
        V = pi1_discrete(cyclic(k), "*")
        if V.order != k or not any(V.element_order(g) == k for g in V.elements):
            failures.append(("cyclic", k))
    actions = corpus.action_groupoids()
    for name, SG in actions.items():
        if abelianization(pi1_action_groupoid(SG).presentation) != groupoid_homology(SG, 1):
            failures.append(("h1", name))
    r = pi1_action_groupoid(rot(2, 3))
    index = coset_enumeration(r.presentation, [list(w) for w in r.inclusion])
    if not (index == r.index == 2):
        failures.append(("index", index))
    verdict("AC10 fundamental group", failures, f"{len(actions)} simplicial inputs, Rot(2,3) index {index}")


def test_ac11_algebra():
    failures = []
    for n in range(1, 5):
        A = GroupoidAlgebra(pair(n))
        objs = [str(i) for i in range(n)]
        for i in objs:
            for j in objs:
                for k in objs:
                    for m in objs:
                        want = {pid(i, m): 1} if j == k else {}
                        if A.mul(delta(pid(i, j)), delta(pid(k, m))) != want:
                            failures.append(("unit", n, i, j, k, m))
    principal = {k: E for k, E in corpus.bibundles().items() if classify_bundle(E).principal}
    triples = [
        (a, b, c)
        for a, b in composable_pairs(principal)
        for c in principal
        if principal[b].right == principal[c].left
    ]
    rng = random.Random(20261019)

    def rand(E):
        support = rng.sample(list(E.total), k=min(len(E.total), rng.randint(1, 3)))
        return {e: rng.randint(-5, 5) for e in support}

    for _ in range(100):
        a, b, c = rng.choice(triples)
        E, F, K = principal[a], principal[b], principal[c]
        if wp_associativity_failures(E, F, K, rand(E), rand(F), rand(K)):
            failures.append(("wp", a, b, c))
    small = [(a, b) for a, b in composable_pairs(principal) if len(principal[a].total) <= 12 and len(principal[b].total) <= 12]
    for a, b in small:
        if not mho_iso_check(principal[a], principal[b]).holds:
            failures.append(("mho", a, b))
    r = algebra_morita_check(pair(3), point(), BUDGET)
    for X, (M, N, G, A) in (
        (r.left_round_trip, (r.forward, r.backward, pair(3), r.forward.left)),
        (r.right_round_trip, (r.backward, r.forward, point(), r.backward.left)),
    ):
        T = balanced_tensor(M, N).bimodule
        R = regular_bimodule(G, A)
        if X is None or not intertwines(T, R, X) or len(X) != T.dim or oracles.det(X) == 0:
            failures.append(("morita", G.summary()))
    try:
        algebra_morita_check(cyclic(2), cyclic(3))
        failures.append("cyclic2~cyclic3")
    except NotEquivalent:
        pass
    verdict("AC11 convolution algebra", failures, f"matrix units n<=4, 100 wp triples, {len(small)} mho pairs, pair3~point")


SUITE_SCRIPT = """
import json, sys
from groupoidal.cli import run
for argv in json.loads(sys.argv[1]):
    code, text = run(argv)
    sys.stdout.write(f"$ {' '.join(argv)}\\n{code}\\n{text}")
"""


def test_ac12_cli_determinism():
    import json

    cases = [list(c) for c in CLI_CASES]
    cases += [c + ["--format", "text"] for c in cases]
    cases += [["invert", str(ROOT / "data" / "pair3_column.json"), "--budget", "0"], ["bogus", "x"]]
    outputs = []
    for seed in ("1", "2"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        proc = subprocess.run(
            [sys.executable, "-c", SUITE_SCRIPT, json.dumps(cases)], capture_output=True, env=env, check=True, cwd=ROOT
        )
        outputs.append(proc.stdout)
    failures = [] if outputs[0] == outputs[1] and outputs[0] else ["outputs differ"]
    verdict("AC12 CLI determinism", failures, f"{len(cases)} invocations, {len(outputs[0])} bytes, two hash seeds")
