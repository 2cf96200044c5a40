"""Brute-force reference computations, written without the library internals."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def groupoid_law_failures(G) -> list:
    """Every composable triple, unit and inverse checked by direct lookup."""
    bad = []
    for a in G.objects:
        u = G.unit[a]
        if G.dom[u] != a or G.cod[u] != a:
            bad.append(("unit", a))
    for g in G.morphisms:
        if G.comp[(g, G.unit[G.dom[g]])] != g or G.comp[(G.unit[G.cod[g]], g)] != g:
            bad.append(("unit law", g))
        gi = G.inv[g]
        if G.comp[(gi, g)] != G.unit[G.dom[g]] or G.comp[(g, gi)] != G.unit[G.cod[g]]:
            bad.append(("inverse", g))
    for f in G.morphisms:
        for g in G.morphisms:
            if G.dom[f] != G.cod[g]:
                if (f, g) in G.comp:
                    bad.append(("spurious composite", f, g))
                continue
            fg = G.comp[(f, g)]
            if G.dom[fg] != G.dom[g] or G.cod[fg] != G.cod[f]:
                bad.append(("dom/cod", f, g))
            for h in G.morphisms:
                if G.dom[g] == G.cod[h] and G.comp[(fg, h)] != G.comp[(f, G.comp[(g, h)])]:
                    bad.append(("assoc", f, g, h))
    return bad


def orbit_blocks(objects, edges) -> list:
    """Connected components of the undirected graph, as sorted tuples."""
    parent = {a: a for a in objects}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    blocks: dict = {}
    for a in objects:
        blocks.setdefault(find(a), []).append(a)
    return sorted(tuple(sorted(v)) for v in blocks.values())


def det(M) -> int:
    """Exact determinant by fraction-valued elimination."""
    n = len(M)
    A = [[Fraction(v) for v in row] for row in M]
    out = Fraction(1)
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            return 0
        if k != c:
            A[c], A[k] = A[k], A[c]
            out = -out
        out *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(out)


def invariant_factors(M) -> list:
    """Invariant factors from determinantal divisors ``d_k = gcd of k×k minors``."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[M[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


def rational_rank(M) -> int:
    return len(invariant_factors(M)) if M and M[0] else 0


def homology_from_boundaries(dims, boundary) -> dict:
    """``{n: (rank, torsion)}`` using ``boundary(n)`` as nested lists ``C_n → C_{n-1}``."""
    out = {}
    top = len(dims) - 1
    for n in range(top + 1):
        dn = boundary(n) if n > 0 else []
        dn1 = boundary(n + 1) if n < top else []
        r_out = rational_rank(dn) if n > 0 else 0
        factors = invariant_factors(dn1) if n < top and dn1 and dn1[0] else []
        torsion = tuple(f for f in factors if f > 1)
        out[n] = (dims[n] - r_out - len(factors), torsion)
    return out


def simplicial_boundary(simplices_by_dim, n) -> list:
    """Alternating-sign boundary on ascending-ordered simplices."""
    rows = simplices_by_dim[n - 1]
    index = {s: i for i, s in enumerate(rows)}
    cols = simplices_by_dim[n]
    M = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            M[index[face]][j] += (-1) ** i
    return M


def all_simplices(facets) -> list:
    found = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            found.update(combinations(f, k))
    top = max(len(s) for s in found) - 1
    return [sorted(s for s in found if len(s) == n + 1) for n in range(top + 1)]


def complex_homology(facets) -> dict:
    by_dim = all_simplices(facets)
    return homology_from_boundaries([len(s) for s in by_dim], lambda n: simplicial_boundary(by_dim, n))


def tensor_size(E, F) -> int:
    """Number of diagonal H-orbits on the fibered product ``E ×_{H0} F``."""
    H = E.right
    pairs = {(e, f) for e in E.total for f in F.total if E.w[e] == F.p[f]}
    seen = set()
    count = 0
    for e, f in sorted(pairs):
        if (e, f) in seen:
            continue
        count += 1
        for h in H.ending_at(E.w[e]):
            seen.add((E.right_act[(e, h)], F.left_act[(H.inv[h], f)]))
    return count


def convolution(G, x: dict, y: dict) -> dict:
    """``(x y)(g) = Σ_{g = g1 ∘ g2} x(g1) y(g2)`` over all composable pairs."""
    out: dict = {}
    for g1, a in x.items():
        for g2, b in y.items():
            if G.dom[g1] == G.cod[g2]:
                g = G.comp[(g1, g2)]
                out[g] = out.get(g, Fraction(0)) + Fraction(a) * Fraction(b)
    return {k: v for k, v in out.items() if v}
