"""Homology of groupoids through the cokernel of ``cod♯ − dom♯``.

Two models of the object chains are supported:

* discrete groupoids: singular chains on a finite discrete set, i.e. one
  constant simplex per object in every degree, with boundary the identity in
  even degrees ≥ 2 and zero in odd degrees.  Chains are truncated at a top
  degree; results are reported only strictly below it.
* a finite group acting freely and regularly on a simplicial complex:
  simplicial chains, whose coinvariants have the simplex orbits as a basis.

In both cases ``S(G)`` is presented on orbit representatives, ``BS(G)`` is
the kernel of the quotient map, and every long exact sequence is checked on
explicit cycle representatives using integer lattices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import NotCovering, NotExactInput, NotInvariant, UnsupportedCoefficients
from .groupoid import FiniteGroupoid, GroupoidFunctor, effect, orbit_space
from .intlinalg import (
    AbelianGroupDescriptor,
    IntMatrix,
    Lattice,
    kernel_basis,
    quotient_descriptor,
    smith_normal_form,
    solve,
)
from .simplicial import IntChainComplex, SimplicialActionGroupoid, check_free_regular

Z = AbelianGroupDescriptor(1)
DEFAULT_DISCRETE_TOP = 4


# lattice subquotients and maps between them


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """Independent columns spanning the same lattice as the columns of ``M``."""
    snf = smith_normal_form(M)
    return (M @ snf.V).select_columns(range(snf.rank))


def _diag_columns(moduli: Sequence[int]) -> IntMatrix:
    cols = []
    for i, m in enumerate(moduli):
        if m:
            col = [0] * len(moduli)
            col[i] = m
            cols.append(col)
    return IntMatrix.from_columns(cols, len(moduli))


class Subquotient:
    """``span(cycles) / span(relations)`` inside ``ℤ^ambient``."""

    def __init__(self, cycles: IntMatrix, relations: IntMatrix):
        self.cycles = cycles
        self.relations = relations
        self.ambient = cycles.rows
        self._z = Lattice(cycles)
        self._b = Lattice(relations)

    @classmethod
    def zero(cls) -> "Subquotient":
        return cls(IntMatrix(0, 0), IntMatrix(0, 0))

    @property
    def rank(self) -> int:
        return self.cycles.cols

    def coords(self, v: Sequence[int]) -> list:
        c = self._z.coordinates(v)
        if c is None:
            raise ValueError("vector is not a cycle")
        return c

    def is_trivial(self, v: Sequence[int]) -> bool:
        return v in self._b if self.ambient else True

    def descriptor(self) -> AbelianGroupDescriptor:
        return quotient_descriptor(self.cycles, self.relations)


@dataclass
class HomMap:
    """A homomorphism given by the images of the source cycle basis."""

    source: Subquotient
    target: Subquotient
    images: IntMatrix  # target.ambient x source.rank
    label: str = ""

    def apply(self, v: Sequence[int]) -> list:
        return self.images.apply(self.source.coords(v))

    @classmethod
    def induced(cls, source: Subquotient, target: Subquotient, chain_map: IntMatrix, label: str = "") -> "HomMap":
        return cls(source, target, chain_map @ source.cycles, label)

    @classmethod
    def zero(cls, source: Subquotient, target: Subquotient, label: str = "") -> "HomMap":
        return cls(source, target, IntMatrix(target.ambient, source.rank), label)


def exact_at(f: HomMap, g: HomMap) -> bool:
    """``im f == ker g`` in the middle group."""
    mid = f.target
    for col in f.images.columns():
        if not g.target.is_trivial(g.apply(col)):
            return False
    if mid.rank == 0:
        return True
    Gm = g.images
    stacked = Gm.hstack(g.target.relations * -1) if g.target.relations.cols else Gm
    kernel = kernel_basis(stacked) if stacked.rows else IntMatrix.identity(stacked.cols)
    image = f.images.hstack(mid.relations)
    image_lattice = Lattice(image)
    for col in kernel.columns():
        y = col[: mid.rank]
        v = mid.cycles.apply(y)
        if v not in image_lattice:
            return False
    return True


def is_isomorphism(f: HomMap) -> bool:
    zero = Subquotient.zero()
    return exact_at(HomMap.zero(zero, f.source), f) and exact_at(f, HomMap.zero(f.target, zero))


# chain complexes with coefficients


@dataclass
class TensoredComplex:
    """``C ⊗ (⊕ ℤ/m_i)`` with summand-major coordinates; ``m_i = 0`` means ℤ."""

    base: IntChainComplex
    moduli: tuple

    def ambient(self, n: int) -> int:
        return self._dim(n) * len(self.moduli)

    def _dim(self, n: int) -> int:
        return self.base.dims[n] if 0 <= n < len(self.base.dims) else 0

    def coordinate_moduli(self, n: int) -> list:
        return [m for m in self.moduli for _ in range(self._dim(n))]

    def boundary(self, n: int) -> IntMatrix:
        return kron_identity(len(self.moduli), self.base.boundary(n))

    def group(self, n: int) -> Subquotient:
        d = self.boundary(n)
        mods_below = self.coordinate_moduli(n - 1)
        stacked = d.hstack(_diag_columns(mods_below)) if any(mods_below) else d
        if stacked.rows:
            kb = kernel_basis(stacked)
            proj = IntMatrix(d.cols, kb.cols, [row[:] for row in kb.data[: d.cols]])
            cycles = lattice_basis(proj)
        else:
            cycles = IntMatrix.identity(d.cols)
        rel = self.boundary(n + 1)
        mods = self.coordinate_moduli(n)
        if any(mods):
            rel = rel.hstack(_diag_columns(mods))
        return Subquotient(cycles, rel)


def kron_identity(k: int, M: IntMatrix) -> IntMatrix:
    out = IntMatrix(k * M.rows, k * M.cols)
    for b in range(k):
        for i, row in enumerate(M.data):
            for j, v in enumerate(row):
                if v:
                    out.data[b * M.rows + i][b * M.cols + j] = v
    return out


def kron(F: IntMatrix, M: IntMatrix) -> IntMatrix:
    """``F ⊗ M`` matching the summand-major layout."""
    out = IntMatrix(F.rows * M.rows, F.cols * M.cols)
    for a, frow in enumerate(F.data):
        for b, f in enumerate(frow):
            if not f:
                continue
            for i, row in enumerate(M.data):
                for j, v in enumerate(row):
                    if v:
                        out.data[a * M.rows + i][b * M.cols + j] += f * v
    return out


def _solve_mod(M: IntMatrix, v: Sequence[int], moduli: Sequence[int]) -> Optional[list]:
    """``x`` with ``M x ≡ v`` coordinatewise modulo ``moduli``."""
    extra = _diag_columns(moduli)
    stacked = M.hstack(extra) if extra.cols else M
    sol = solve(stacked, v)
    return None if sol is None else sol[: M.cols]


@dataclass
class LongExactSequence:
    groups: list  # Subquotient, in sequence order
    labels: list
    maps: list  # HomMap between consecutive groups
    exact: list  # exactness at each interior group

    @property
    def all_exact(self) -> bool:
        return all(self.exact)

    def descriptors(self) -> list:
        return [(lab, g.descriptor()) for lab, g in zip(self.labels, self.groups)]

    def report(self) -> dict:
        return {
            "terms": [{"term": lab, **d.to_json()} for lab, d in self.descriptors()],
            "exact": self.exact,
            "all_exact": self.all_exact,
        }


def long_exact_sequence(
    A: TensoredComplex,
    B: TensoredComplex,
    C: TensoredComplex,
    iota: Mapping,
    pi: Mapping,
    top: int,
    names: Sequence[str] = ("A", "B", "C"),
) -> LongExactSequence:
    """LES of a short exact sequence of complexes, from degree ``top`` down to 0.

    ``iota[n]`` and ``pi[n]`` are coordinate matrices of the chain maps.
    The sequence starts at ``H_(top+1)(C)`` so the first joint is checked too.
    """
    groups, labels, maps = [], [], []
    cache: dict = {}

    def grp(X, tag, n):
        key = (tag, n)
        if key not in cache:
            cache[key] = X.group(n)
        return cache[key]

    def connecting(n) -> HomMap:
        src = grp(C, "C", n)
        tgt = grp(A, "A", n - 1)
        cols = []
        for z in src.cycles.columns():
            x = _solve_mod(pi[n], z, C.coordinate_moduli(n))
            if x is None:
                raise NotExactInput("quotient map is not surjective", degree=n)
            dx = B.boundary(n).apply(x)
            y = _solve_mod(iota[n - 1], dx, B.coordinate_moduli(n - 1))
            if y is None:
                raise NotExactInput("boundary of a lift does not come from the subcomplex", degree=n)
            cols.append(y)
        return HomMap(src, tgt, IntMatrix.from_columns(cols, tgt.ambient), f"δ{n}")

    groups.append(grp(C, "C", top + 1))
    labels.append(f"H{top + 1}({names[2]})")
    for n in range(top, -1, -1):
        maps.append(connecting(n + 1))
        gA, gB, gC = grp(A, "A", n), grp(B, "B", n), grp(C, "C", n)
        groups += [gA, gB, gC]
        labels += [f"H{n}({names[0]})", f"H{n}({names[1]})", f"H{n}({names[2]})"]
        maps.append(HomMap.induced(gA, gB, iota[n], f"ι{n}"))
        maps.append(HomMap.induced(gB, gC, pi[n], f"π{n}"))
    zero = Subquotient.zero()
    maps.append(HomMap.zero(groups[-1], zero))
    groups.append(zero)
    labels.append("0")
    exact = [exact_at(maps[i - 1], maps[i]) for i in range(1, len(groups) - 1)]
    return LongExactSequence(groups, labels, maps, exact)


# short exact sequences of free modules


@dataclass
class SESReport:
    injective: bool
    composite_zero: bool
    middle_exact: bool
    surjective: bool
    splitting: Optional[IntMatrix]

    @property
    def exact(self) -> bool:
        return self.injective and self.composite_zero and self.middle_exact and self.surjective

    @property
    def splits(self) -> bool:
        return self.splitting is not None

    def to_json(self) -> dict:
        return {
            "injective": self.injective,
            "composite_zero": self.composite_zero,
            "middle_exact": self.middle_exact,
            "surjective": self.surjective,
            "splits": self.splits,
        }


def check_free_ses(iota: IntMatrix, pi: IntMatrix) -> SESReport:
    """Exactness of ``0 → ℤ^a → ℤ^b → ℤ^c → 0`` and an integer section of ``pi``."""
    injective = iota.cols == 0 or kernel_basis(iota).cols == 0
    composite_zero = (pi @ iota).is_zero()
    ker = kernel_basis(pi) if pi.rows else IntMatrix.identity(pi.cols)
    lat = Lattice(iota)
    middle = all(col in lat for col in ker.columns())
    cols = []
    for j in range(pi.rows):
        e = [0] * pi.rows
        e[j] = 1
        x = solve(pi, e)
        if x is None:
            break
        cols.append(x)
    surjective = len(cols) == pi.rows
    splitting = IntMatrix.from_columns(cols, pi.cols) if surjective else None
    if splitting is not None and not (pi @ splitting) == IntMatrix.identity(pi.rows):
        splitting = None
    return SESReport(injective, composite_zero, middle, surjective, splitting)


# the groupoid chain model


@dataclass
class ChainModel:
    """Object chains, their orbit classes, and the matrices relating them."""

    base: IntChainComplex
    cells: tuple  # per degree: tuple of cells
    classes: tuple  # per degree: list of (class index, sign) per cell
    reps: tuple  # per degree: cell index of each class representative
    omega: tuple  # per degree: matrix of cod♯ − dom♯
    valid_top: int
    support: tuple = field(default=())  # per degree: frozenset of vertices per cell

    def top(self) -> int:
        return len(self.cells) - 1

    def n_classes(self, n: int) -> int:
        return len(self.reps[n]) if 0 <= n <= self.top() else 0

    def epsilon(self, n: int) -> IntMatrix:
        """Quotient map ``C_n(G0) → S_n(G)``."""
        M = IntMatrix(self.n_classes(n), len(self.cells[n]) if 0 <= n <= self.top() else 0)
        if 0 <= n <= self.top():
            for j, (k, s) in enumerate(self.classes[n]):
                M.data[k][j] = s
        return M

    def non_reps(self, n: int) -> list:
        if not 0 <= n <= self.top():
            return []
        rs = set(self.reps[n])
        return [j for j in range(len(self.cells[n])) if j not in rs]

    def iota(self, n: int) -> IntMatrix:
        """Inclusion ``BS_n(G) → C_n(G0)``; basis ``τ − sign·rep`` per non-representative."""
        size = len(self.cells[n]) if 0 <= n <= self.top() else 0
        cols = []
        for j in self.non_reps(n):
            k, s = self.classes[n][j]
            col = [0] * size
            col[j] = 1
            col[self.reps[n][k]] -= s
            cols.append(col)
        return IntMatrix.from_columns(cols, size)

    def section(self, n: int) -> IntMatrix:
        """Representative lift ``S_n(G) → C_n(G0)``."""
        size = len(self.cells[n]) if 0 <= n <= self.top() else 0
        cols = []
        for r in (self.reps[n] if 0 <= n <= self.top() else []):
            col = [0] * size
            col[r] = 1
            cols.append(col)
        return IntMatrix.from_columns(cols, size)

    def S(self) -> IntChainComplex:
        d = {}
        for n in range(1, self.top() + 1):
            d[n] = self.epsilon(n - 1) @ self.base.boundary(n) @ self.section(n)
            if not (d[n] @ self.epsilon(n)) == (self.epsilon(n - 1) @ self.base.boundary(n)):
                raise AssertionError(f"orbit presentation is not compatible with the boundary in degree {n}")
        return IntChainComplex(tuple(self.n_classes(n) for n in range(self.top() + 1)), d)

    def BS(self) -> IntChainComplex:
        d = {}
        for n in range(1, self.top() + 1):
            image = self.base.boundary(n) @ self.iota(n)
            rows = self.non_reps(n - 1)
            d[n] = IntMatrix(len(rows), image.cols, [list(image.data[r]) for r in rows])
            if not (self.iota(n - 1) @ d[n]) == image:
                raise AssertionError(f"balanced boundary leaves the kernel in degree {n}")
        return IntChainComplex(tuple(len(self.non_reps(n)) for n in range(self.top() + 1)), d)

    def class_of(self, n: int, cell) -> tuple:
        return self.classes[n][self._index[n][cell]]

    @property
    def _index(self) -> list:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = [{c: i for i, c in enumerate(cells)} for cells in self.cells]
            self.__dict__["_index_cache"] = cached
        return cached


def _discrete_model(G: FiniteGroupoid, top: int) -> ChainModel:
    orbits = orbit_space(G)
    objs = G.objects
    cells = tuple(tuple((x,) for x in objs) for _ in range(top + 1))
    idx = {x: i for i, x in enumerate(objs)}
    classes = tuple([(orbits.block_of[x], 1) for x in objs] for _ in range(top + 1))
    reps = tuple([idx[b[0]] for b in orbits.blocks] for _ in range(top + 1))
    d = {}
    for n in range(1, top + 1):
        d[n] = IntMatrix.identity(len(objs)) if n % 2 == 0 else IntMatrix(len(objs), len(objs))
    base = IntChainComplex(tuple(len(objs) for _ in range(top + 1)), d)
    om = IntMatrix(len(objs), len(G.morphisms))
    for j, g in enumerate(G.morphisms):
        om.data[idx[G.cod[g]]][j] += 1
        om.data[idx[G.dom[g]]][j] -= 1
    omega = tuple(om for _ in range(top + 1))
    support = tuple(tuple(frozenset(c) for c in cells[n]) for n in range(top + 1))
    return ChainModel(base, cells, classes, reps, omega, top - 1, support)


def _simplicial_model(SG: SimplicialActionGroupoid) -> ChainModel:
    check_free_regular(SG)
    K = SG.complex
    group = SG.group.elements
    cells, classes, reps, omegas, support = [], [], [], [], []
    for n in range(K.dimension + 1):
        simplices = K.simplices_of(n)
        index = {s: i for i, s in enumerate(simplices)}
        cls = [None] * len(simplices)
        rep_list = []
        for i, s in enumerate(simplices):
            if cls[i] is not None:
                continue
            k = len(rep_list)
            rep_list.append(i)
            for g in group:
                sign, t = SG.act_signed(s, g)
                j = index[t]
                if cls[j] is None:
                    cls[j] = (k, sign)
                elif cls[j] != (k, sign):
                    raise AssertionError("inconsistent orbit signs; action is not regular")
        om = IntMatrix(len(simplices), len(simplices) * len(group))
        for gi, g in enumerate(group):
            for i, s in enumerate(simplices):
                col = gi * len(simplices) + i
                sign, t = SG.act_signed(s, g)
                om.data[i][col] += 1
                om.data[index[t]][col] -= sign
        cells.append(simplices)
        classes.append(cls)
        reps.append(rep_list)
        omegas.append(om)
        support.append(tuple(frozenset(s) for s in simplices))
    return ChainModel(
        K.chain_complex(), tuple(cells), tuple(classes), tuple(reps), tuple(omegas), K.dimension, tuple(support)
    )


Groupoidish = Union[FiniteGroupoid, SimplicialActionGroupoid]


def chain_model(X: Groupoidish, top: Optional[int] = None) -> ChainModel:
    if isinstance(X, SimplicialActionGroupoid):
        return _simplicial_model(X)
    return _discrete_model(X, DEFAULT_DISCRETE_TOP if top is None else top)


def _model_for_degree(X: Groupoidish, n: int) -> ChainModel:
    if isinstance(X, SimplicialActionGroupoid):
        return _simplicial_model(X)
    return _discrete_model(X, max(DEFAULT_DISCRETE_TOP, n + 2))


def _coefficient_moduli(A: AbelianGroupDescriptor) -> tuple:
    if not isinstance(A, AbelianGroupDescriptor):
        raise UnsupportedCoefficients("coefficients must be a finitely generated abelian group")
    return tuple(A.cyclic_summands())


def groupoid_homology(X: Groupoidish, n: int, coefficients: AbelianGroupDescriptor = Z) -> AbelianGroupDescriptor:
    """``H_n(S(G) ⊗ A)``."""
    model = _model_for_degree(X, n)
    return TensoredComplex(model.S(), _coefficient_moduli(coefficients)).group(n).descriptor()


def groupoid_cohomology(X: Groupoidish, n: int, coefficients: AbelianGroupDescriptor = Z) -> AbelianGroupDescriptor:
    """``Hⁿ(Hom(S(G), A))`` summed over the cyclic summands of ``A``."""
    model = _model_for_degree(X, n)
    S = model.S()
    out = AbelianGroupDescriptor(0)
    for m in _coefficient_moduli(coefficients):
        out = out + S.cohomology(n, m)
    return out


def balanced_homology(X: Groupoidish, n: int, coefficients: AbelianGroupDescriptor = Z) -> AbelianGroupDescriptor:
    model = _model_for_degree(X, n)
    return TensoredComplex(model.BS(), _coefficient_moduli(coefficients)).group(n).descriptor()


def object_homology(X: Groupoidish, n: int) -> AbelianGroupDescriptor:
    model = _model_for_degree(X, n)
    return TensoredComplex(model.base, (0,)).group(n).descriptor()


def omega_cokernel_matches(model: ChainModel) -> bool:
    """``im(cod♯ − dom♯) == ker(quotient)`` in every degree."""
    for n in range(model.top() + 1):
        om = model.omega[n]
        eps = model.epsilon(n)
        if not (eps @ om).is_zero():
            return False
        lat = Lattice(om)
        if not all(col in lat for col in model.iota(n).columns()):
            return False
    return True


def short_exact_reports(model: ChainModel) -> list:
    """Degreewise ``0 → BS → C(G0) → S → 0`` reports."""
    return [check_free_ses(model.iota(n), model.epsilon(n)) for n in range(model.top() + 1)]


def balanced_les(X: Groupoidish, coefficients: AbelianGroupDescriptor = Z, top: Optional[int] = None) -> LongExactSequence:
    """``… → BH_n → H_n(G0) → H_n(G) → BH_(n-1) → …``."""
    model = chain_model(X, top)
    mods = _coefficient_moduli(coefficients)
    k = len(mods)
    A = TensoredComplex(model.BS(), mods)
    B = TensoredComplex(model.base, mods)
    C = TensoredComplex(model.S(), mods)
    iota = {n: kron_identity(k, model.iota(n)) for n in range(-1, model.top() + 2)}
    pi = {n: kron_identity(k, model.epsilon(n)) for n in range(-1, model.top() + 2)}
    return long_exact_sequence(A, B, C, iota, pi, model.valid_top, ("BS", "G0", "G"))


def coefficient_les(
    X: Groupoidish,
    A: AbelianGroupDescriptor,
    B: AbelianGroupDescriptor,
    C: AbelianGroupDescriptor,
    f: IntMatrix,
    g: IntMatrix,
    top: Optional[int] = None,
) -> LongExactSequence:
    """LES in homology induced by ``0 → A →f B →g C → 0``.

    ``f`` and ``g`` act on the cyclic-summand coordinates of the groups.
    """
    mA, mB, mC = (tuple(D.cyclic_summands()) for D in (A, B, C))
    if (f.rows, f.cols) != (len(mB), len(mA)) or (g.rows, g.cols) != (len(mC), len(mB)):
        raise NotExactInput("maps do not match the group shapes")
    gA = Subquotient(IntMatrix.identity(len(mA)), _diag_columns(mA))
    gB = Subquotient(IntMatrix.identity(len(mB)), _diag_columns(mB))
    gC = Subquotient(IntMatrix.identity(len(mC)), _diag_columns(mC))
    for M, src_mods, tgt in ((f, mA, gB), (g, mB, gC)):
        for j, m in enumerate(src_mods):
            if m and not tgt.is_trivial([m * v for v in M.column(j)]):
                raise NotExactInput("map is not well defined on the cyclic summands")
    zero = Subquotient.zero()
    fm = HomMap.induced(gA, gB, f)
    gm = HomMap.induced(gB, gC, g)
    if not (
        exact_at(HomMap.zero(zero, gA), fm)
        and exact_at(fm, gm)
        and exact_at(gm, HomMap.zero(gC, zero))
    ):
        raise NotExactInput("coefficient sequence is not exact")
    model = chain_model(X, top)
    S = model.S()
    TA, TB, TC = TensoredComplex(S, mA), TensoredComplex(S, mB), TensoredComplex(S, mC)
    degrees = range(-1, model.top() + 2)
    iota = {n: kron(f, IntMatrix.identity(S.dims[n] if 0 <= n < len(S.dims) else 0)) for n in degrees}
    pi = {n: kron(g, IntMatrix.identity(S.dims[n] if 0 <= n < len(S.dims) else 0)) for n in degrees}
    return long_exact_sequence(TA, TB, TC, iota, pi, model.valid_top, (str(A), str(B), str(C)))


# comparison maps


def induced_chain_map(sub: ChainModel, big: ChainModel, n: int, cell_map=None) -> IntMatrix:
    """``S_n(sub) → S_n(big)`` sending each class to the class of its representative's image."""
    rows = big.n_classes(n)
    M = IntMatrix(rows, sub.n_classes(n))
    for k, r in enumerate(sub.reps[n] if 0 <= n <= sub.top() else []):
        cell = sub.cells[n][r]
        if cell_map is not None:
            cell = cell_map(cell)
        idx, sign = big.class_of(n, cell)
        M.data[idx][k] += sign
    return M


@dataclass
class MayerVietorisReport:
    degreewise: list
    les: LongExactSequence

    @property
    def exact(self) -> bool:
        return all(r.exact for r in self.degreewise) and self.les.all_exact

    def to_json(self) -> dict:
        return {
            "degreewise": [r.to_json() for r in self.degreewise],
            "homology": self.les.report(),
            "exact": self.exact,
        }


def _restrict(X: Groupoidish, U: frozenset):
    if isinstance(X, SimplicialActionGroupoid):
        return X.restrict(U)
    return X.full_subgroupoid(U)


def mayer_vietoris_check(X: Groupoidish, U: Iterable[str], V: Iterable[str], top: Optional[int] = None) -> MayerVietorisReport:
    """Check ``0 → S(G|U∩V) → S(G|U) ⊕ S(G|V) → S(G) → 0`` and its homology LES."""
    U, V = frozenset(U), frozenset(V)
    if isinstance(X, SimplicialActionGroupoid):
        universe = frozenset(X.complex.vertices)
        for W in (U, V):
            if not W <= universe or not X.is_invariant(W):
                raise NotInvariant("subset is not invariant", subset=sorted(W))
        for dim in X.complex.simplices:
            for s in dim:
                if not (set(s) <= U or set(s) <= V):
                    raise NotCovering("simplex lies in neither subcomplex", simplex=list(s))
    else:
        universe = X.object_set
        for W in (U, V):
            if not W <= universe or any(X.cod[h] not in W for u in W for h in X.starting_at(u)):
                raise NotInvariant("subset is not invariant", subset=sorted(W))
        if U | V != universe:
            raise NotCovering("subsets do not cover the objects")
    if top is None and not isinstance(X, SimplicialActionGroupoid):
        top = DEFAULT_DISCRETE_TOP
    big = chain_model(X, top)
    mU = chain_model(_restrict(X, U), top)
    mV = chain_model(_restrict(X, V), top)
    mW = chain_model(_restrict(X, U & V), top)
    SW, SU, SV, SG = mW.S(), mU.S(), mV.S(), big.S()
    N = big.top()
    iota, pi = {}, {}
    for n in range(-1, N + 2):
        if 0 <= n <= N:
            a, b, c = mW.n_classes(n), mU.n_classes(n), mV.n_classes(n)
            toU = induced_chain_map(mW, mU, n)
            toV = induced_chain_map(mW, mV, n)
            iota[n] = IntMatrix(b + c, a, toU.data + toV.data)
            jU = induced_chain_map(mU, big, n)
            jV = induced_chain_map(mV, big, n)
            pi[n] = jU.hstack(jV * -1)
        else:
            iota[n] = IntMatrix(0, 0)
            pi[n] = IntMatrix(0, 0)
    direct = IntChainComplex(
        tuple(SU.dims[n] + SV.dims[n] for n in range(N + 1)),
        {n: _block_diag(SU.boundary(n), SV.boundary(n)) for n in range(1, N + 1)},
    )
    degreewise = [check_free_ses(iota[n], pi[n]) for n in range(N + 1)]
    les = long_exact_sequence(
        TensoredComplex(SW, (0,)),
        TensoredComplex(direct, (0,)),
        TensoredComplex(SG, (0,)),
        iota,
        pi,
        big.valid_top,
        ("U∩V", "U⊕V", "G"),
    )
    return MayerVietorisReport(degreewise, les)


def _block_diag(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    out = IntMatrix(A.rows + B.rows, A.cols + B.cols)
    for i, row in enumerate(A.data):
        out.data[i][: A.cols] = list(row)
    for i, row in enumerate(B.data):
        out.data[A.rows + i][A.cols:] = list(row)
    return out


@dataclass
class EffectHomologyReport:
    degrees: list
    groupoid: list
    effect: list
    isomorphism: list

    @property
    def holds(self) -> bool:
        return all(self.isomorphism)

    def to_json(self) -> dict:
        return {
            "degrees": [
                {"n": n, "groupoid": a.to_json(), "effect": b.to_json(), "isomorphism": iso}
                for n, a, b, iso in zip(self.degrees, self.groupoid, self.effect, self.isomorphism)
            ],
            "holds": self.holds,
        }


def functor_homology_map(phi: GroupoidFunctor, n: int, top: Optional[int] = None) -> HomMap:
    """Map ``H_n(G) → H_n(H)`` induced by a functor of discrete groupoids."""
    top = max(DEFAULT_DISCRETE_TOP, n + 2) if top is None else top
    src = chain_model(phi.source, top)
    tgt = chain_model(phi.target, top)
    maps = {m: induced_chain_map(src, tgt, m, lambda c: (phi.obj_map[c[0]],)) for m in (n,)}
    gs = TensoredComplex(src.S(), (0,)).group(n)
    gt = TensoredComplex(tgt.S(), (0,)).group(n)
    return HomMap.induced(gs, gt, maps[n])


def effect_homology_check(G: FiniteGroupoid, max_degree: int = 3) -> EffectHomologyReport:
    _, psi = effect(G)
    degrees = list(range(max_degree + 1))
    out_g, out_e, iso = [], [], []
    for n in degrees:
        f = functor_homology_map(psi, n)
        out_g.append(f.source.descriptor())
        out_e.append(f.target.descriptor())
        iso.append(is_isomorphism(f))
    return EffectHomologyReport(degrees, out_g, out_e, iso)
