"""Diagonalizable groups and Gl_n over F1, N and Z, through their points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, prod
from typing import Any, Callable, Sequence

from .errors import BudgetExceeded, InputError
from .lattice import inverse_rational
from .budget import resolve_budget
from .monoids import (AffineMonoid, FiniteMonoid, free_group, hom_enumerate,
                      units)
from .rings import FiniteSemiring
from .schemes import SchemeAtlas, affine_atlas, disjoint_union


@dataclass(frozen=True)
class GroupPoints:
    """A finite group given by its elements and a composition procedure."""

    elements: tuple
    law: Callable[[Any, Any], Any]
    unit: Any

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def inverse(self, x):
        for y in self.elements:
            if self.law(x, y) == self.unit:
                return y
        return None

    def check_axioms(self) -> bool:
        """Closure, unit, inverses and associativity, exhaustively."""
        es = set(self.elements)
        if self.unit not in es:
            return False
        table = {(a, b): self.law(a, b) for a in self.elements for b in self.elements}
        if any(v not in es for v in table.values()):
            return False
        if any(table[(self.unit, a)] != a or table[(a, self.unit)] != a for a in self.elements):
            return False
        if any(self.inverse(a) is None for a in self.elements):
            return False
        return all(table[(table[(a, b)], c)] == table[(a, table[(b, c)])]
                   for a in self.elements for b in self.elements for c in self.elements)

    def is_commutative(self) -> bool:
        return all(self.law(a, b) == self.law(b, a)
                   for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {"order": self.order, "elements": [_jsonable(e) for e in self.elements]}


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _as_monoid(b) -> FiniteMonoid:
    if isinstance(b, FiniteSemiring):
        return b.multiplicative_monoid()
    if isinstance(b, FiniteMonoid):
        return b
    raise InputError(f"unsupported target {b!r}")


# -- diagonalizable groups -------------------------------------------------


@dataclass(frozen=True)
class Diagonalizable:
    """D(M) = Spec M for an abelian group M; D(Z) is G_m."""

    group: Any

    @property
    def atlas(self) -> SchemeAtlas:
        return affine_atlas(self.group)

    def points(self, b) -> GroupPoints:
        """Hom(M, B^x) with the pointwise product."""
        bm = _as_monoid(b)
        homs = hom_enumerate(self.group, bm)
        elems = tuple(sorted(h.generator_images for h in homs))

        def law(x, y):
            return tuple(bm.mul(a, c) for a, c in zip(x, y))

        ngen = len(self.group.generators)
        return GroupPoints(elems, law, (bm.unit,) * ngen)


def diagonalizable(m) -> Diagonalizable:
    if isinstance(m, FiniteMonoid) and not m.is_group():
        raise InputError("D(M) needs an abelian group")
    if isinstance(m, AffineMonoid) and len(m.inverted) != len(m.gens):
        raise InputError("D(M) needs an abelian group")
    return Diagonalizable(m)


def gm() -> Diagonalizable:
    return diagonalizable(free_group(1))


# -- Gl_n over F1 ----------------------------------------------------------


@dataclass(frozen=True)
class GlnF1:
    """Gl_n over F1: the semidirect product of S_n with G_m^n.

    A point (p, u) over B acts on basis vectors by e_i -> u_i e_{p(i)}.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be at least 1")

    @property
    def atlas(self) -> SchemeAtlas:
        """n! disjoint copies of G_m^n."""
        out = affine_atlas(free_group(self.n), label="s0")
        for k in range(1, factorial(self.n)):
            out = disjoint_union(out, affine_atlas(free_group(self.n), label=f"s{k}"))
        return out

    def points(self, b) -> GroupPoints:
        bm = _as_monoid(b)
        us = units(bm)
        unit_elems = [bm.index(name) for name in us.names]
        perms = list(itertools.permutations(range(self.n)))
        elems = tuple((p, u) for p in perms for u in itertools.product(unit_elems,
                                                                         repeat=self.n))

        def law(x, y):
            (p, u), (r, v) = x, y
            return (tuple(p[r[i]] for i in range(self.n)),
                    tuple(bm.mul(v[i], u[r[i]]) for i in range(self.n)))

        ident = (tuple(range(self.n)), (bm.unit,) * self.n)
        return GroupPoints(elems, law, ident)

    def monomial_matrix(self, point, b: FiniteSemiring) -> tuple:
        p, u = point
        rows = [[b.zero] * self.n for _ in range(self.n)]
        for i in range(self.n):
            rows[p[i]][i] = u[i]
        return tuple(tuple(r) for r in rows)


def gln_f1(n: int) -> GlnF1:
    return GlnF1(n)


# -- Gl_n by matrices ------------------------------------------------------


def _matmul(b: FiniteSemiring, x, y, n):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = b.zero
            for k in range(n):
                acc = b.add[acc][b.mul[x[i][k]][y[k][j]]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def gln_points_matrix(n: int, b: FiniteSemiring, budget: int | None = None) -> GroupPoints:
    """All n x n matrices over B with a two-sided inverse, under matrix product."""
    budget = resolve_budget(budget)
    size = b.size ** (n * n)
    if size > budget:
        raise BudgetExceeded(f"Gl_{n} matrix enumeration over {b.name}", budget, size)
    vectors = list(itertools.product(b.elements(), repeat=n))
    basis = [tuple(b.one if i == j else b.zero for i in range(n)) for j in range(n)]
    ident = tuple(zip(*basis))
    found = []
    for flat in itertools.product(b.elements(), repeat=n * n):
        u = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        # column j of a right inverse solves U v = e_j
        cols = []
        for e in basis:
            cands = [v for v in vectors
                     if all(_row_dot(b, u[i], v) == e[i] for i in range(n))]
            if not cands:
                break
            cols.append(cands)
        else:
            for choice in itertools.product(*cols):
                v = tuple(zip(*choice))
                if _matmul(b, v, u, n) == ident:
                    found.append(u)
                    break
    return GroupPoints(tuple(found), lambda x, y: _matmul(b, x, y, n), ident)


def _row_dot(b, row, v):
    acc = b.zero
    for x, y in zip(row, v):
        acc = b.add[acc][b.mul[x][y]]
    return acc


def gl_order_formula(n: int, q: int) -> int:
    """|Gl_n(F_q)| = prod_{i<n} (q^n - q^i)."""
    return prod(q ** n - q ** i for i in range(n))


def count_det_units(n: int, b: FiniteSemiring) -> int:
    """Matrices over a commutative ring whose Leibniz determinant is a unit."""
    if not b.is_ring:
        raise InputError("determinants need additive inverses")
    units_ = set(b.unit_indices)
    perms = [(p, _sign(p)) for p in itertools.permutations(range(n))]
    count = 0
    for flat in itertools.product(b.elements(), repeat=n * n):
        det = b.zero
        for p, s in perms:
            term = b.one
            for i in range(n):
                term = b.mul[term][flat[i * n + p[i]]]
            det = b.add[det][term if s > 0 else b.neg(term)]
        count += det in units_
    return count


def _sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def invertible_over_N(a: Sequence[Sequence[int]]) -> bool:
    """True iff A is invertible over Q with an inverse that has entries in N."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise InputError("matrix must be square")
    inv = inverse_rational(a)
    if inv is None:
        return False
    return all(x.denominator == 1 and x >= 0 for row in inv for x in row)


def is_permutation_matrix(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    return (all(sorted(r) == [0] * (n - 1) + [1] for r in a)
            and all(sorted(c) == [0] * (n - 1) + [1] for c in zip(*a)))


def n_matrices_invertible_over_N(n: int, max_entry: int) -> list[tuple]:
    out = []
    for flat in itertools.product(range(max_entry + 1), repeat=n * n):
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if invertible_over_N(m):
            out.append(m)
    return out
