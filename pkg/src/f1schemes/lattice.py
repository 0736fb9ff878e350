"""Exact integer and rational linear algebra on lists of Python ints.

Matrices are lists of rows.  Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def primitive_rational(v: Sequence[Fraction]) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols if ncols is not None else len(rows[0]))[0])


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution x of a x = b (free variables set to 0), or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def inverse_rational(a: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        return None
    return [row[n:] for row in red[:n]]


def inverse_unimodular(a: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse_rational(a)
    if inv is None or any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def determinant(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def smith_normal_form(a: Sequence[Sequence[int]], nrows: int | None = None,
                      ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(D, S, T)`` with ``S @ A @ T == D``, ``S`` and ``T`` unimodular,
    ``D`` diagonal with nonnegative entries ``d_0 | d_1 | ...``.
    """
    m = nrows if nrows is not None else len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    d = [list(map(int, row)) for row in a] if m else []
    s = identity(m)
    t = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]

    def add_col(src, dst, k):
        for row in d:
            row[dst] += k * row[src]
        for row in t:
            row[dst] += k * row[src]

    for k in range(min(m, n)):
        while True:
            # smallest nonzero entry of the remaining block becomes the pivot
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish_snf(d, s, t, m, n)
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            p = d[k][k]
            done = True
            for i in range(k + 1, m):
                q = d[i][k] // p
                if q:
                    add_row(k, i, -q)
                if d[i][k]:
                    done = False
            for j in range(k + 1, n):
                q = d[k][j] // p
                if q:
                    add_col(k, j, -q)
                if d[k][j]:
                    done = False
            if not done:
                continue
            # divisibility: pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], k, 1)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            s[k] = [-x for x in s[k]]
    return _finish_snf(d, s, t, m, n)


def _finish_snf(d, s, t, m, n):
    for k in range(min(m, n)):
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            s[k] = [-x for x in s[k]]
    return d, s, t


def snf_diagonal(a: Sequence[Sequence[int]], nrows: int | None = None,
                 ncols: int | None = None) -> list[int]:
    d, _, _ = smith_normal_form(a, nrows, ncols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """A basis of {x in Z^ncols : a x = 0}; the lattice it spans is saturated."""
    if not a:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    d, _, t = smith_normal_form(a, len(a), ncols)
    r = sum(1 for i in range(min(len(a), ncols)) if d[i][i])
    return [tuple(t[i][j] for i in range(ncols)) for j in range(r, ncols)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Vector | None:
    """One integer solution of a x = b, or None if there is none."""
    m = len(a)
    if m == 0:
        return tuple([0] * ncols)
    d, s, t = smith_normal_form(a, m, ncols)
    sb = matvec(s, b)
    z = [0] * ncols
    for i in range(m):
        di = d[i][i] if i < ncols else 0
        if di == 0:
            if sb[i] != 0:
                return None
        else:
            if sb[i] % di:
                return None
            z[i] = sb[i] // di
    return tuple(matvec(t, z))


class LatticeQuotient:
    """The group Z^dim / L for L spanned by ``basis``.

    ``key`` maps a vector to a canonical hashable representative of its class,
    ``coefficients`` writes an element of L in terms of the basis.
    """

    def __init__(self, basis: Sequence[Sequence[int]], dim: int):
        self.basis = [tuple(v) for v in basis]
        self.dim = dim
        cols = transpose(self.basis, dim) if self.basis else [[] for _ in range(dim)]
        self._cols = cols
        if self.basis:
            d, s, _ = smith_normal_form(cols, dim, len(self.basis))
            self._diag = [d[i][i] if i < len(self.basis) else 0 for i in range(dim)]
        else:
            s = identity(dim)
            self._diag = [0] * dim
        self._s = s

    def key(self, v: Sequence[int]) -> Vector:
        y = matvec(self._s, v)
        out = []
        for yi, di in zip(y, self._diag):
            if di == 1:
                continue
            out.append(yi % di if di else yi)
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.key(v))

    def coefficients(self, v: Sequence[int]) -> Vector | None:
        if not self.basis:
            return () if not any(v) else None
        return solve_integer(self._cols, v, len(self.basis))

    @property
    def torsion(self) -> list[int]:
        return sorted(d for d in self._diag if d > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self._diag if d == 0)


def saturated_complement(basis: Sequence[Sequence[int]], dim: int) -> tuple[Matrix, Matrix]:
    """For a saturated lattice L with the given basis, return (S, S_inv).

    S is unimodular and maps L onto the span of the first rank(L) unit
    vectors, so ``(S v)[rank:]`` are coordinates on Z^dim / L.
    """
    if not basis:
        return identity(dim), identity(dim)
    cols = transpose(basis, dim)
    d, s, _ = smith_normal_form(cols, dim, len(basis))
    if any(d[i][i] != 1 for i in range(len(basis))):
        raise ValueError("lattice is not saturated or basis is dependent")
    return s, inverse_unimodular(s)
