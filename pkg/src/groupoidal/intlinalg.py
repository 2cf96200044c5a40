"""Exact integer linear algebra: Smith normal form and lattice quotients.

Matrices are ``IntMatrix`` values with an explicit shape, so empty matrices
(zero rows or columns) keep their dimensions through products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


class IntMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[list] = None):
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else [[0] * cols for _ in range(rows)]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = [list(map(int, r)) for r in rows]
        ncols = len(data[0]) if data else (cols or 0)
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                m.data[i][j] = int(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        m = cls(len(entries), len(entries))
        for i, v in enumerate(entries):
            m.data[i][i] = v
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [list(r) for r in self.data])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.data == other.data
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        ot = other.data
        for i, row in enumerate(self.data):
            acc = out.data[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(ot[k]):
                        if b:
                            acc[j] += a * b
        return out

    def __mul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[scalar * v for v in r] for r in self.data])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def apply(self, v: Sequence[int]) -> list:
        return [sum(a * b for a, b in zip(row, v) if a) for row in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix(self.rows, self.cols + other.cols, [a + b for a, b in zip(self.data, other.data)])

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    def tolist(self) -> list:
        return [list(r) for r in self.data]


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """``U·M·V = D`` with unimodular ``U``, ``V`` and a divisibility chain on ``D``.

    Pivots are chosen with least absolute value among the remaining entries.
    """
    A = M.copy().data
    m, n = M.rows, M.cols
    U = IntMatrix.identity(m).data
    V = IntMatrix.identity(n).data

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row dst += k * row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(s, i)
            swap_cols(s, j)
            p = A[s][s]
            dirty = False
            for i in range(s + 1, m):
                if A[i][s]:
                    add_row(i, s, -(A[i][s] // p))
                    dirty = dirty or A[i][s] != 0
            for j in range(s + 1, n):
                if A[s][j]:
                    add_col(j, s, -(A[s][j] // p))
                    dirty = dirty or A[s][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(s, bad[0], 1)
        if s < m and s < n and A[s][s] < 0:
            A[s] = [-a for a in A[s]]
            U[s] = [-a for a in U[s]]
        if s >= m or s >= n or A[s][s] == 0:
            break
    return SmithForm(IntMatrix(m, n, A), IntMatrix(m, m, U), IntMatrix(n, n, V))


def invariant_factors(M: IntMatrix) -> list:
    return [d for d in smith_normal_form(M).diagonal if d != 0]


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel."""
    snf = smith_normal_form(M)
    return snf.V.select_columns(range(snf.rank, M.cols))


def solve(M: IntMatrix, v: Sequence[int]) -> Optional[list]:
    """An integer ``x`` with ``M x = v``, or None."""
    snf = smith_normal_form(M)
    return _solve_with(snf, M.cols, v)


def _solve_with(snf: SmithForm, ncols: int, v: Sequence[int]) -> Optional[list]:
    rhs = snf.U.apply(v)
    diag = snf.diagonal
    r = snf.rank
    y = [0] * ncols
    for i, val in enumerate(rhs):
        if i < r:
            if val % diag[i]:
                return None
            y[i] = val // diag[i]
        elif val:
            return None
    return snf.V.apply(y)


class Lattice:
    """Integer span of the columns of a matrix, with cached membership tests."""

    def __init__(self, generators: IntMatrix):
        self.generators = generators
        self._snf = smith_normal_form(generators)

    def coordinates(self, v: Sequence[int]) -> Optional[list]:
        return _solve_with(self._snf, self.generators.cols, v)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None


def congruence_kernel(M: IntMatrix, modulus: int) -> IntMatrix:
    """Basis of ``{x : M x ≡ 0 mod modulus}`` (plain kernel when modulus is 0)."""
    if modulus == 0:
        return kernel_basis(M)
    snf = smith_normal_form(M)
    diag = snf.diagonal
    cols = []
    for i in range(M.cols):
        factor = modulus // gcd(diag[i], modulus) if i < snf.rank else 1
        cols.append([factor * v for v in snf.V.column(i)])
    return IntMatrix.from_columns(cols, M.cols)


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """``ℤ^rank ⊕ ℤ/t1 ⊕ ... `` with ``t1 | t2 | ...``."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError("invalid abelian group descriptor")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion must form a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def to_json(self, n: Optional[int] = None) -> dict:
        out = {} if n is None else {"n": n}
        out.update({"rank": self.rank, "torsion": list(self.torsion)})
        return out

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def from_cyclic_orders(cls, rank: int, orders: Iterable[int]) -> "AbelianGroupDescriptor":
        """Normalize an arbitrary list of cyclic orders (0 means ℤ, 1 is dropped)."""
        orders = list(orders)
        rank += sum(1 for t in orders if t == 0)
        finite = [t for t in orders if t > 1]
        factors = invariant_factors(IntMatrix.diagonal(finite)) if finite else []
        return cls(rank, tuple(t for t in factors if t > 1))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupDescriptor":
        """Parse ``Z``, ``Z/2``, ``Z^2+Z/3``, ``0``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(0)
        rank, orders = 0, []
        for part in text.split("+"):
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z/"):
                orders.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        if any(t < 1 for t in orders):
            raise ValueError(f"cannot parse abelian group {text!r}")
        return cls.from_cyclic_orders(rank, orders)

    def cyclic_summands(self) -> list:
        """Moduli of the cyclic summands (0 stands for ℤ)."""
        return [0] * self.rank + list(self.torsion)

    def __add__(self, other: "AbelianGroupDescriptor") -> "AbelianGroupDescriptor":
        return AbelianGroupDescriptor.from_cyclic_orders(self.rank + other.rank, list(self.torsion) + list(other.torsion))


def quotient_descriptor(Z: IntMatrix, B: IntMatrix) -> AbelianGroupDescriptor:
    """Structure of ``span(Z) / span(B)``; ``Z`` has independent columns containing ``B``."""
    if Z.cols == 0:
        return AbelianGroupDescriptor(0)
    coords = []
    lat = Lattice(Z)
    for col in B.columns():
        c = lat.coordinates(col)
        if c is None:
            raise ValueError("relation lattice is not inside the generator lattice")
        coords.append(c)
    C = IntMatrix.from_columns(coords, Z.cols)
    diag = smith_normal_form(C).diagonal
    nonzero = [d for d in diag if d]
    return AbelianGroupDescriptor(Z.cols - len(nonzero), tuple(d for d in nonzero if d > 1))
