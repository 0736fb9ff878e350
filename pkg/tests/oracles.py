"""Brute-force oracles that share no code with the package."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, prod


def solve_square(rows, rhs):
    """Gauss-Jordan over Q; None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def simplicial_coords(rays, x):
    """Coefficients of x in the basis ``rays`` (a full-rank simplicial cone)."""
    cols = [list(c) for c in zip(*rays)]
    return solve_square(cols, x)


def in_simplicial_cone(rays, x) -> bool:
    c = simplicial_coords(rays, x)
    return c is not None and all(v >= 0 for v in c)


def simplicial_cone_points(rays, max_grade):
    """Lattice points x = sum a_i r_i with a_i >= 0 and sum a_i <= max_grade."""
    d = len(rays[0])
    box = max_grade * max(abs(v) for r in rays for v in r)
    out = []
    for x in itertools.product(range(-box, box + 1), repeat=d):
        c = simplicial_coords(rays, x)
        if c is not None and all(v >= 0 for v in c) and sum(c) <= max_grade:
            out.append((tuple(x), sum(c)))
    return out


def brute_hilbert_basis(rays):
    """Irreducible lattice points of a full-dimensional simplicial cone."""
    d = len(rays)
    pts = simplicial_cone_points(rays, d)
    nonzero = {x: g for x, g in pts if any(x)}
    irreducible = []
    for x, g in nonzero.items():
        split = False
        for p, h in nonzero.items():
            if h < g:
                rest = tuple(a - b for a, b in zip(x, p))
                if rest in nonzero:
                    split = True
                    break
        if not split:
            irreducible.append(x)
    return sorted(irreducible)


def table_hom_count(src_table, src_unit, tgt_table, tgt_unit) -> int:
    """Count all maps between finite monoid tables that preserve unit and product."""
    n, m = len(src_table), len(tgt_table)
    count = 0
    for f in itertools.product(range(m), repeat=n):
        if f[src_unit] != tgt_unit:
            continue
        if all(f[src_table[a][b]] == tgt_table[f[a]][f[b]] for a in range(n) for b in range(n)):
            count += 1
    return count


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def fq_star_table(p):
    """The cyclic group F_p^x for p prime, elements 1..p-1 relabelled 0..p-2."""
    elems = list(range(1, p))
    idx = {e: i for i, e in enumerate(elems)}
    return [[idx[(a * b) % p] for b in elems] for a in elems], idx[1]


def gl_order(n, q):
    return prod(q ** n - q ** i for i in range(n))


def mu_n_count(n, q):
    return gcd(n, q - 1)


def minimal_ideal_group_order(table, unit) -> int:
    """Order of eM for the idempotent e in the minimal ideal of a finite commutative monoid."""
    n = len(table)
    ideal = set(range(n))
    for x in range(n):
        ideal &= {table[x][y] for y in range(n)}
    e = next(x for x in ideal if table[x][x] == x)
    return len({table[e][y] for y in range(n)})


def brute_matrix_group(n, add, mul, zero, one, size):
    """Invertible n x n matrices over a finite semiring given by tables."""
    def mm(x, y):
        return tuple(tuple(_dot(add, mul, zero, x[i], [y[k][j] for k in range(n)])
                           for j in range(n)) for i in range(n))
    ident = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    mats = [tuple(tuple(f[i * n:(i + 1) * n]) for i in range(n))
            for f in itertools.product(range(size), repeat=n * n)]
    return [u for u in mats if any(mm(u, v) == ident and mm(v, u) == ident for v in mats)]


def _dot(add, mul, zero, row, col):
    acc = zero
    for a, b in zip(row, col):
        acc = add[acc][mul[a][b]]
    return acc


def count_commutative_monoids(n: int) -> int:
    """Isomorphism classes of commutative monoids of order n, by raw table search."""
    pairs = [(a, b) for a in range(1, n) for b in range(a, n)]
    seen = set()
    for vals in itertools.product(range(n), repeat=len(pairs)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (a, b), v in zip(pairs, vals):
            t[a][b] = t[b][a] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            continue
        forms = []
        for p in itertools.permutations(range(1, n)):
            p = (0,) + p
            inv = {v: i for i, v in enumerate(p)}
            forms.append(tuple(p[t[inv[a]][inv[b]]] for a in range(n) for b in range(n)))
        seen.add(min(forms))
    return len(seen)


def count_acts(table, unit, n: int) -> int:
    """Isomorphism classes of actions of a finite monoid on an n-point set, by raw search."""
    k = len(table)
    funcs = list(itertools.product(range(n), repeat=n))
    seen = set()
    for act in itertools.product(funcs, repeat=k):
        if act[unit] != tuple(range(n)):
            continue
        if any(act[table[s][t]][x] != act[s][act[t][x]]
               for s in range(k) for t in range(k) for x in range(n)):
            continue
        forms = []
        for p in itertools.permutations(range(n)):
            inv = {v: i for i, v in enumerate(p)}
            forms.append(tuple(tuple(p[act[s][inv[x]]] for x in range(n)) for s in range(k)))
        seen.add(min(forms))
    return len(seen)
