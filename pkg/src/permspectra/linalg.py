"""Small exact linear algebra over the rationals (lists of ``Fraction``).

Sizes here are tiny (one row per partition or class), so plain Gaussian
elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(a)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1])


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column."""
    red, pivots = rref(a)
    cols = len(red[0]) if red else (ncols or 0)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_affine(a: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], Matrix] | None:
    """A particular solution of a x = b and a nullspace basis, or None if inconsistent."""
    cols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, p in zip(red, pivots):
        x[p] = row[cols]
    return x, nullspace(a, cols)


def solve_square(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, None if singular."""
    n = len(a)
    res = solve_affine(a, b) if n else ([], [])
    if res is None or res[1]:
        return None
    return res[0]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def matvec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [dot(row, x) for row in a]


def min_norm_solution(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Minimum Euclidean-norm solution of a x = b (exact), None if inconsistent."""
    res = solve_affine(a, b)
    if res is None:
        return None
    x0, null = res
    if not null:
        return x0
    # minimise |x0 + N^T y|^2  =>  (N N^T) y = -N x0
    gram = [[dot(u, v) for v in null] for u in null]
    rhs = [-dot(u, x0) for u in null]
    y = solve_square(gram, rhs)
    return [x0[i] + sum(yk * vk[i] for yk, vk in zip(y, null)) for i in range(len(x0))]


def orthogonal_projection(vectors: Sequence[Sequence], u: Sequence) -> list[Fraction]:
    """Project u onto span(vectors) with exact Gram-Schmidt."""
    basis: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for e, ne in zip(basis, norms):
            c = dot(e, w) / ne
            if c:
                w = [wi - c * ei for wi, ei in zip(w, e)]
        nw = dot(w, w)
        if nw:
            basis.append(w)
            norms.append(nw)
    out = [Fraction(0)] * len(u)
    for e, ne in zip(basis, norms):
        c = dot(e, u) / ne
        if c:
            out = [o + c * ei for o, ei in zip(out, e)]
    return out


def simplex_max(c: Sequence, a: Sequence[Sequence], b: Sequence, max_pivots: int = 10_000):
    """Maximise c.z subject to a z <= b, z >= 0, where b >= 0 (origin feasible).

    Dense tableau simplex with Bland's rule, exact arithmetic. Returns
    ``(value, z)``; ``None`` if unbounded or the pivot budget runs out.
    """
    m, k = len(a), len(c)
    if any(Fraction(x) < 0 for x in b):
        raise ValueError("origin must be feasible (b >= 0)")
    # row i: [a_i | e_i | b_i]; objective row holds reduced costs -c
    tab = [to_matrix([list(row) + [1 if j == i else 0 for j in range(m)] + [bi]])[0]
           for i, (row, bi) in enumerate(zip(a, b))]
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [k + i for i in range(m)]
    for _ in range(max_pivots):
        enter = next((j for j in range(k + m) if obj[j] < 0), None)
        if enter is None:
            z = [Fraction(0)] * (k + m)
            for i, bj in enumerate(basis):
                z[bj] = tab[i][-1]
            return obj[-1], z[:k]
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(m) if tab[i][enter] > 0
        ]
        if not ratios:
            return None
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return None
