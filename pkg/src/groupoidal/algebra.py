"""Convolution algebras of finite groupoids and bimodules of bibundles.

Functions on finite sets are sparse ``{id: Fraction}`` dictionaries; the
zero function is the empty dictionary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .bibundle import (
    Bibundle,
    _require_discrete,
    classify_bundle,
    invert,
    morita_equivalent,
    tensor_with_classes,
    unit_bibundle,
)
from .errors import AlgebraMismatch, GroupoidMismatch, NotEquivalent, NotPrincipal, SearchTooLarge
from .groupoid import FiniteGroupoid, pid
from .ratlinalg import is_invertible, matmul, nullspace, rank, rref

ISO_DIMENSION_CAP = 64
ISO_ATTEMPTS = 16


def _clean(v: Mapping) -> dict:
    return {k: Fraction(x) for k, x in v.items() if x}


def delta(k: str) -> dict:
    return {k: Fraction(1)}


def _pairs(entries: Mapping, *indices: Mapping) -> list:
    out = []
    for key, vec in entries.items():
        for k, x in vec.items():
            out.append([*(idx[part] for idx, part in zip(indices[:-1], key)), indices[-1][k], x.numerator, x.denominator])
    return sorted(out)


class GroupoidAlgebra:
    """``C(G)`` with product ``(x·x')(g) = Σ_{g = g'∘g''} x(g') x'(g'')``."""

    def __init__(self, G: FiniteGroupoid):
        self.groupoid = G
        self.basis = G.morphisms
        self.index = {g: i for i, g in enumerate(self.basis)}
        self.structure = {(a, b): self.multiply(delta(a), delta(b)) for a in self.basis for b in self.basis}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply(self, x: Mapping, y: Mapping) -> dict:
        """The convolution sum, enumerating every factorization of every ``g``."""
        G = self.groupoid
        out = {}
        for g in G.morphisms:
            total = Fraction(0)
            for g2 in G.starting_at(G.dom[g]):
                g1 = G.compose(g, G.inv[g2])
                a, b = x.get(g1), y.get(g2)
                if a and b:
                    total += a * b
            if total:
                out[g] = total
        return out

    def mul(self, x: Mapping, y: Mapping) -> dict:
        """Product through the structure constants."""
        out: dict = {}
        for a, xa in x.items():
            for b, yb in y.items():
                for c, v in self.structure[(a, b)].items():
                    out[c] = out.get(c, Fraction(0)) + xa * yb * v
        return _clean(out)

    def unit_of(self, objects) -> dict:
        return {self.groupoid.unit[a]: Fraction(1) for a in objects}

    def local_unit(self, elements: Sequence[Mapping]) -> dict:
        """Sum of the object units touched by the supports."""
        G = self.groupoid
        objs = set()
        for x in elements:
            for g in x:
                objs |= {G.dom[g], G.cod[g]}
        return self.unit_of(objs)

    def associativity_failures(self) -> list:
        bad = []
        for a in self.basis:
            for b in self.basis:
                ab = self.structure[(a, b)]
                for c in self.basis:
                    if self.mul(ab, delta(c)) != self.mul(delta(a), self.structure[(b, c)]):
                        bad.append((a, b, c))
        return bad

    def to_json(self) -> dict:
        return {
            "groupoid_objects": list(self.groupoid.objects),
            "basis": list(self.basis),
            "structure": _pairs(self.structure, self.index, self.index, self.index),
        }


# the pairing of functions on bibundles


def wp_at(E: Bibundle, F: Bibundle, m: Mapping, m2: Mapping, e: str, f: str) -> Fraction:
    """``Σ_{cod h = w(e)} m(e·h) m2(h⁻¹·f)``."""
    H = E.right
    total = Fraction(0)
    for h in H.ending_at(E.w[e]):
        a = m.get(E.act_right(e, h))
        if not a:
            continue
        b = m2.get(F.act_left(H.inv[h], f))
        if b:
            total += a * b
    return total


def wp(E: Bibundle, F: Bibundle, m: Mapping, m2: Mapping, T=None) -> dict:
    """The pairing as a function on ``E ⊗ F``; every class member gives the same value."""
    if E.right != F.left:
        raise GroupoidMismatch("bundles are not composable")
    T = tensor_with_classes(E, F) if T is None else T
    out = {}
    for name, members in T.members.items():
        values = {wp_at(E, F, m, m2, e, f) for e, f in members}
        if len(values) != 1:
            raise AssertionError(f"pairing depends on the representative of {name}")
        v = values.pop()
        if v:
            out[name] = v
    return out


def wp_associativity_failures(
    E: Bibundle, F: Bibundle, K: Bibundle, m: Mapping, m2: Mapping, m3: Mapping
) -> list:
    """Triples where ``wp(wp(m,m2),m3)`` and ``wp(m,wp(m2,m3))`` disagree."""
    T1 = tensor_with_classes(E, F)
    T2 = tensor_with_classes(F, K)
    T12_3 = tensor_with_classes(T1.bundle, K)
    T1_23 = tensor_with_classes(E, T2.bundle)
    left = wp(T1.bundle, K, wp(E, F, m, m2, T1), m3, T12_3)
    right = wp(E, T2.bundle, m, wp(F, K, m2, m3, T2), T1_23)
    bad = []
    for e in E.total:
        for f in F.p_fiber(E.w[e]):
            for k in K.p_fiber(F.w[f]):
                lhs = left.get(T12_3.class_of[(T1.class_of[(e, f)], k)], Fraction(0))
                rhs = right.get(T1_23.class_of[(e, T2.class_of[(f, k)])], Fraction(0))
                if lhs != rhs:
                    bad.append((e, f, k, lhs, rhs))
    return bad


# bimodules


@dataclass
class Bimodule:
    left: GroupoidAlgebra
    right: GroupoidAlgebra
    basis: tuple
    left_const: dict  # (a, m) -> vector
    right_const: dict  # (m, b) -> vector
    p: dict = field(default_factory=dict)
    w: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act_left(self, x: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for k, mk in m.items():
                for t, v in self.left_const.get((a, k), {}).items():
                    out[t] = out.get(t, Fraction(0)) + xa * mk * v
        return _clean(out)

    def act_right(self, m: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for k, mk in m.items():
            for b, yb in y.items():
                for t, v in self.right_const.get((k, b), {}).items():
                    out[t] = out.get(t, Fraction(0)) + mk * yb * v
        return _clean(out)

    def left_matrix(self, a: str) -> list:
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j, m in enumerate(self.basis):
            for t, v in self.left_const.get((a, m), {}).items():
                M[self.index[t]][j] = v
        return M

    def right_matrix(self, b: str) -> list:
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j, m in enumerate(self.basis):
            for t, v in self.right_const.get((m, b), {}).items():
                M[self.index[t]][j] = v
        return M

    def axiom_failures(self) -> list:
        """Module and interchange laws on all basis triples."""
        A, B = self.left, self.right
        bad = []
        for m in self.basis:
            dm = delta(m)
            for a in A.basis:
                am = self.act_left(delta(a), dm)
                for a2 in A.basis:
                    if self.act_left(A.structure[(a2, a)], dm) != self.act_left(delta(a2), am):
                        bad.append(("left", a2, a, m))
                for b in B.basis:
                    if self.act_right(am, delta(b)) != self.act_left(delta(a), self.act_right(dm, delta(b))):
                        bad.append(("interchange", a, m, b))
            for b in B.basis:
                mb = self.act_right(dm, delta(b))
                for b2 in B.basis:
                    if self.act_right(dm, B.structure[(b, b2)]) != self.act_right(mb, delta(b2)):
                        bad.append(("right", m, b, b2))
        return bad

    def local_units(self, elements: Sequence[Mapping]) -> tuple:
        """``(x, y)`` with ``x·m == m == m·y`` for every given element."""
        ps = {self.p[k] for m in elements for k in m}
        ws = {self.w[k] for m in elements for k in m}
        return self.left.unit_of(ps), self.right.unit_of(ws)

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "left": _pairs(self.left_const, self.left.index, self.index, self.index),
            "right": _pairs(self.right_const, self.index, self.right.index, self.index),
        }


def bimodule_of_bibundle(E: Bibundle, A: Optional[GroupoidAlgebra] = None, B: Optional[GroupoidAlgebra] = None) -> Bimodule:
    """``(x·m)(e) = wp(x, m)(1 ⊗ e)`` and ``(m·y)(e) = wp(m, y)(e ⊗ 1)``."""
    _require_discrete(E)
    if not classify_bundle(E).principal:
        raise NotPrincipal("bimodules are built from principal bundles")
    G, H = E.left, E.right
    A = GroupoidAlgebra(G) if A is None else A
    B = GroupoidAlgebra(H) if B is None else B
    UG, UH = unit_bibundle(G), unit_bibundle(H)
    left_const, right_const = {}, {}
    for m in E.total:
        dm = delta(m)
        for a in G.morphisms:
            vec = {}
            for e in E.total:
                v = wp_at(UG, E, delta(a), dm, G.unit[E.p[e]], e)
                if v:
                    vec[e] = v
            if vec:
                left_const[(a, m)] = vec
        for b in H.morphisms:
            vec = {}
            for e in E.total:
                v = wp_at(E, UH, dm, delta(b), e, H.unit[E.w[e]])
                if v:
                    vec[e] = v
            if vec:
                right_const[(m, b)] = vec
    return Bimodule(A, B, E.total, left_const, right_const, dict(E.p), dict(E.w))


def regular_bimodule(G: FiniteGroupoid, A: Optional[GroupoidAlgebra] = None) -> Bimodule:
    return bimodule_of_bibundle(unit_bibundle(G), A, A)


def zero_bimodule(A: GroupoidAlgebra, B: GroupoidAlgebra) -> Bimodule:
    return Bimodule(A, B, (), {}, {})


# balanced tensor products


@dataclass
class BalancedTensor:
    """``M ⊗_B N`` presented on the free columns of the balancing relations."""

    bimodule: Bimodule
    first: Bimodule
    second: Bimodule
    relations: list  # RREF rows over the plain tensor coordinates
    pivots: list
    free: list  # plain coordinates kept as the quotient basis

    def plain_index(self, m: str, n: str) -> int:
        return self.first.index[m] * self.second.dim + self.second.index[n]

    def reduce(self, v: Sequence) -> list:
        """Quotient coordinates of a plain tensor vector."""
        v = [Fraction(x) for x in v]
        for row, p in zip(self.relations, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return [v[c] for c in self.free]

    def plain(self, m: Mapping, n: Mapping) -> list:
        v = [Fraction(0)] * (self.first.dim * self.second.dim)
        for a, x in m.items():
            for b, y in n.items():
                v[self.plain_index(a, b)] += x * y
        return v


def balanced_tensor(M: Bimodule, N: Bimodule) -> BalancedTensor:
    if M.right.groupoid != N.left.groupoid:
        raise AlgebraMismatch("middle algebras differ")
    width = M.dim * N.dim
    partial = BalancedTensor(zero_bimodule(M.left, N.right), M, N, [], [], list(range(width)))
    rows = []
    for m in M.basis:
        for b in M.right.basis:
            mb = M.act_right(delta(m), delta(b))
            for n in N.basis:
                v = partial.plain(mb, {n: 1})
                w = partial.plain(delta(m), N.act_left(delta(b), delta(n)))
                r = [x - y for x, y in zip(v, w)]
                if any(r):
                    rows.append(r)
    R, pivots = rref(rows, width) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    T = BalancedTensor(partial.bimodule, M, N, R, pivots, free)
    names = []
    for c in free:
        i, j = divmod(c, N.dim)
        names.append(pid(M.basis[i], N.basis[j]))
    left_const, right_const, p, w = {}, {}, {}, {}
    for t, c in zip(names, free):
        i, j = divmod(c, N.dim)
        m, n = M.basis[i], N.basis[j]
        p[t], w[t] = M.p.get(m), N.w.get(n)
        for a in M.left.basis:
            coords = T.reduce(T.plain(M.act_left(delta(a), delta(m)), delta(n)))
            vec = {names[k]: x for k, x in enumerate(coords) if x}
            if vec:
                left_const[(a, t)] = vec
        for b in N.right.basis:
            coords = T.reduce(T.plain(delta(m), N.act_right(delta(n), delta(b))))
            vec = {names[k]: x for k, x in enumerate(coords) if x}
            if vec:
                right_const[(t, b)] = vec
    T.bimodule = Bimodule(M.left, N.right, tuple(names), left_const, right_const, p, w)
    return T


# the comparison map onto functions on the tensor product bundle


@dataclass
class MhoReport:
    dim_lhs: int
    dim_rhs: int
    well_defined: bool
    equivariant: bool
    bijective: bool
    matrix: list
    failure: Optional[dict] = None

    @property
    def holds(self) -> bool:
        return self.well_defined and self.equivariant and self.bijective

    def to_json(self, with_matrix: bool = False) -> dict:
        out = {
            "dim_lhs": self.dim_lhs,
            "dim_rhs": self.dim_rhs,
            "well_defined": self.well_defined,
            "equivariant": self.equivariant,
            "bijective": self.bijective,
        }
        if self.failure is not None:
            out["failure"] = self.failure
        if with_matrix:
            out["matrix"] = [[[x.numerator, x.denominator] for x in row] for row in self.matrix]
        return out


def mho_iso_check(E: Bibundle, F: Bibundle) -> MhoReport:
    M = bimodule_of_bibundle(E)
    N = bimodule_of_bibundle(F, M.right)
    BT = balanced_tensor(M, N)
    T = tensor_with_classes(E, F)
    P = bimodule_of_bibundle(T.bundle, M.left, N.right)
    omega = [[Fraction(0)] * (M.dim * N.dim) for _ in range(P.dim)]
    for e in E.total:
        for f in F.total:
            col = BT.plain_index(e, f)
            for name, v in wp(E, F, delta(e), delta(f), T).items():
                omega[P.index[name]][col] = v
    failure = None
    well_defined = True
    for row in BT.relations:
        image = [sum((a * b for a, b in zip(r, row) if b), Fraction(0)) for r in omega]
        if any(image):
            well_defined = False
            failure = {"axiom": "well_defined", "relation": [str(x) for x in row]}
            break
    bar = [[r[c] for c in BT.free] for r in omega]

    def apply(coords):
        return {P.basis[i]: x for i, x in enumerate(
            sum((a * b for a, b in zip(r, coords) if b), Fraction(0)) for r in bar) if x}

    Q = BT.bimodule
    equivariant = True
    for k, t in enumerate(Q.basis):
        unit = [Fraction(int(i == k)) for i in range(Q.dim)]
        image = apply(unit)
        for a in Q.left.basis:
            coords = [Q.act_left(delta(a), delta(t)).get(s, Fraction(0)) for s in Q.basis]
            if apply(coords) != P.act_left(delta(a), image):
                equivariant = False
                failure = failure or {"axiom": "left_equivariance", "algebra_element": a, "element": t}
        for b in Q.right.basis:
            coords = [Q.act_right(delta(t), delta(b)).get(s, Fraction(0)) for s in Q.basis]
            if apply(coords) != P.act_right(image, delta(b)):
                equivariant = False
                failure = failure or {"axiom": "right_equivariance", "algebra_element": b, "element": t}
    bijective = Q.dim == P.dim and (rank(bar) if bar and Q.dim else 0) == P.dim
    if not bijective and failure is None:
        failure = {"axiom": "bijective", "rank": rank(bar) if bar and Q.dim else 0, "dim_rhs": P.dim}
    return MhoReport(Q.dim, P.dim, well_defined, equivariant, bijective, bar, failure)


# isomorphism of bimodules


def bimodule_isomorphism(M: Bimodule, N: Bimodule, cap: int = ISO_DIMENSION_CAP) -> Optional[list]:
    """An invertible ``X`` with ``X(a·m) = a·X(m)`` and ``X(m·b) = X(m)·b``, or None.

    Solves the commutant equations exactly, then tries basis vectors and
    seeded random combinations of the solution space.
    """
    if M.left.groupoid != N.left.groupoid or M.right.groupoid != N.right.groupoid:
        raise AlgebraMismatch("bimodules are over different algebras")
    if M.dim != N.dim:
        return None
    d = M.dim
    if d > cap:
        raise SearchTooLarge("bimodule dimension exceeds the cap", dim=d, cap=cap)
    if d == 0:
        return []
    rows = []
    actions = [(M.left_matrix(a), N.left_matrix(a)) for a in M.left.basis]
    actions += [(M.right_matrix(b), N.right_matrix(b)) for b in M.right.basis]
    for LM, LN in actions:
        for i in range(d):
            for j in range(d):
                eq = [Fraction(0)] * (d * d)
                for k in range(d):
                    if LM[k][j]:
                        eq[i * d + k] += LM[k][j]
                    if LN[i][k]:
                        eq[k * d + j] -= LN[i][k]
                if any(eq):
                    rows.append(eq)
    basis = nullspace(rows, d * d)
    if not basis:
        return None
    rng = random.Random(0)
    candidates = list(basis)
    for _ in range(ISO_ATTEMPTS):
        coeffs = [rng.randint(-50, 50) for _ in basis]
        candidates.append([sum((c * v[i] for c, v in zip(coeffs, basis)), Fraction(0)) for i in range(d * d)])
    for x in candidates:
        X = [x[i * d:(i + 1) * d] for i in range(d)]
        if is_invertible(X):
            return X
    return None


def intertwines(M: Bimodule, N: Bimodule, X: list) -> bool:
    for a in M.left.basis:
        if matmul(X, M.left_matrix(a)) != matmul(N.left_matrix(a), X):
            return False
    for b in M.right.basis:
        if matmul(X, M.right_matrix(b)) != matmul(N.right_matrix(b), X):
            return False
    return True


def composition_check(E: Bibundle, F: Bibundle) -> bool:
    """``C(E ⊗ F)`` and ``C(E) ⊗ C(F)`` are isomorphic through an independent search."""
    M = bimodule_of_bibundle(E)
    N = bimodule_of_bibundle(F, M.right)
    P = bimodule_of_bibundle(tensor_with_classes(E, F).bundle, M.left, N.right)
    X = bimodule_isomorphism(balanced_tensor(M, N).bimodule, P)
    return X is not None


@dataclass
class AlgebraMoritaReport:
    witness: Bibundle
    inverse: Bibundle
    forward: Bimodule
    backward: Bimodule
    left_round_trip: Optional[list]
    right_round_trip: Optional[list]

    @property
    def holds(self) -> bool:
        return self.left_round_trip is not None and self.right_round_trip is not None

    def to_json(self) -> dict:
        return {
            "forward_dim": self.forward.dim,
            "backward_dim": self.backward.dim,
            "left_round_trip": self.left_round_trip is not None,
            "right_round_trip": self.right_round_trip is not None,
            "morita_equivalent": self.holds,
        }


def algebra_morita_check(G: FiniteGroupoid, H: FiniteGroupoid, budget: Optional[int] = None) -> AlgebraMoritaReport:
    verdict = morita_equivalent(G, H, budget)
    if not verdict.equivalent:
        raise NotEquivalent("groupoids are not Morita equivalent", **(verdict.reason or {}))
    E = verdict.witness
    Einv = invert(E, budget=budget)
    A, B = GroupoidAlgebra(G), GroupoidAlgebra(H)
    M = bimodule_of_bibundle(E, A, B)
    N = bimodule_of_bibundle(Einv, B, A)
    left = bimodule_isomorphism(balanced_tensor(M, N).bimodule, regular_bimodule(G, A))
    right = bimodule_isomorphism(balanced_tensor(N, M).bimodule, regular_bimodule(H, B))
    return AlgebraMoritaReport(E, Einv, M, N, left, right)
