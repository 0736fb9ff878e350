"""Rational polyhedral cones and fans with exact integer arithmetic.

Duals are computed with the double description method (incremental
Fourier-Motzkin with a rank-based adjacency filter).  Hilbert bases come
from enumerating lattice points in the fundamental parallelepipeds of the
simplicial subcones spanned by extreme rays, followed by reduction.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InputError
from .lattice import (
    Vector,
    dot,
    integer_kernel,
    inverse_rational,
    matvec,
    primitive,
    primitive_rational,
    rank,
    rref,
    saturated_complement,
    solve_rational,
)

DEFAULT_BOX_BUDGET = 200_000


def _canon_sign(v: Vector) -> Vector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def hermite_rows(basis: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form: a canonical basis of the lattice."""
    rows = [list(r) for r in basis if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(n):
                    r[j] -= q * piv[j]
            rows = [r for r in rows if any(r)]
        piv = next(r for r in rows if r[col])
        rows.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for prev in out:
            q = prev[col] // piv[col]
            for j in range(n):
                prev[j] -= q * piv[j]
        out.append(piv)
        col += 1
    return [tuple(r) for r in out]


def _project_out(v: Sequence[int], lin: Sequence[Vector]) -> Vector:
    """Primitive integer vector on the ray of v's projection orthogonal to lin."""
    if not lin:
        return primitive(v)
    gram = [[dot(a, b) for b in lin] for a in lin]
    rhs = [dot(a, v) for a in lin]
    c = solve_rational(gram, rhs)
    w = [Fraction(x) - sum(ci * l[k] for ci, l in zip(c, lin)) for k, x in enumerate(v)]
    return primitive_rational(w)


def _double_description(normals: Sequence[Vector], dim: int) -> tuple[list[Vector], list[Vector]]:
    """Generators of {x : <a, x> >= 0 for a in normals}.

    Returns ``(rays, lineality)`` where ``rays`` are the extreme rays of the
    pointed part (orthogonal to the lineality space) and ``lineality`` is a
    basis of the lineality space.
    """
    lin: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    gens: list[Vector] = []
    done: list[Vector] = []
    for a in normals:
        if not any(a):
            continue
        l0 = next((l for l in lin if dot(a, l)), None)
        if l0 is not None:
            if dot(a, l0) < 0:
                l0 = tuple(-x for x in l0)
            al0 = dot(a, l0)
            new_lin = []
            for l in lin:
                if l == l0 or l == tuple(-x for x in l0):
                    continue
                w = primitive([al0 * x - dot(a, l) * y for x, y in zip(l, l0)])
                if any(w):
                    new_lin.append(w)
            # keep an independent basis
            if new_lin:
                red, _ = rref(new_lin, dim)
                new_lin = [primitive_rational(r) for r in red]
            gens = [primitive([al0 * x - dot(a, g) * y for x, y in zip(g, l0)]) for g in gens]
            gens = [g for g in gens if any(g)]
            gens.append(l0)
            lin = new_lin
        else:
            pos = [g for g in gens if dot(a, g) > 0]
            zer = [g for g in gens if dot(a, g) == 0]
            neg = [g for g in gens if dot(a, g) < 0]
            target = dim - len(lin) - 2
            new = pos + zer
            for p in pos:
                tp = {i for i, c in enumerate(done) if dot(c, p) == 0}
                for n in neg:
                    common = [done[i] for i in tp if dot(done[i], n) == 0]
                    if rank(common, dim) != target:
                        continue
                    w = primitive([dot(a, p) * x - dot(a, n) * y for x, y in zip(n, p)])
                    if any(w):
                        new.append(w)
            gens = new
        done.append(tuple(a))
        gens = _prune(gens, lin, done, dim)
    return gens, lin


def _prune(gens, lin, done, dim):
    out = []
    seen = set()
    need = dim - len(lin) - 1
    for g in gens:
        g = _project_out(g, lin)
        if not any(g) or g in seen:
            continue
        tight = [c for c in done if dot(c, g) == 0]
        if rank(tight, dim) == need:
            seen.add(g)
            out.append(g)
    return out


@dataclass(frozen=True)
class HalfspaceRep:
    """Inner description of a cone as the intersection of {x : <n, x> >= 0}."""

    dim: int
    normals: tuple[Vector, ...]

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(n, v) >= 0 for n in self.normals)


@dataclass(frozen=True)
class RationalCone:
    """Nonnegative rational span of a finite set of integer rays.

    Rays are normalized to primitive vectors, deduplicated and sorted; the zero
    vector is dropped, so ``RationalCone(d, ())`` is the origin.
    """

    dim: int
    rays: tuple[Vector, ...] = ()

    def __post_init__(self):
        norm = set()
        for r in self.rays:
            if len(r) != self.dim:
                raise InputError(f"ray {list(r)} has length {len(r)}, expected {self.dim}")
            p = primitive([int(x) for x in r])
            if any(p):
                norm.add(p)
        object.__setattr__(self, "rays", tuple(sorted(norm)))

    @cached_property
    def halfspaces(self) -> HalfspaceRep:
        rays, lin = _double_description(self.rays, self.dim)
        normals = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
        return HalfspaceRep(self.dim, tuple(sorted(set(normals))))

    @cached_property
    def _generators(self) -> tuple[list[Vector], list[Vector]]:
        return _double_description(self.halfspaces.normals, self.dim)

    @property
    def lineality(self) -> list[Vector]:
        """Hermite-reduced basis of the lattice of integer points of the lineality space."""
        lin = self._generators[1]
        if not lin:
            return []
        normals = [n for n in self.halfspaces.normals]
        return hermite_rows(integer_kernel(normals, self.dim) if normals
                            else [tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim)])

    @property
    def extremal_rays(self) -> list[Vector]:
        """Extreme rays of the pointed part, taken orthogonal to the lineality space."""
        return sorted(self._generators[0])

    def canonical(self) -> "RationalCone":
        rays = list(self.extremal_rays)
        for l in self.lineality:
            rays.append(l)
            rays.append(tuple(-x for x in l))
        return RationalCone(self.dim, tuple(rays))

    @property
    def is_pointed(self) -> bool:
        return not self._generators[1]

    @property
    def dimension(self) -> int:
        return rank(list(self.rays), self.dim) if self.rays else 0

    def contains(self, v: Sequence[int]) -> bool:
        return self.halfspaces.contains(v)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def same_as(self, other: "RationalCone") -> bool:
        """Equality as subsets of R^d."""
        return self.dim == other.dim and self.contains_cone(other) and other.contains_cone(self)

    def interior_point(self) -> Vector:
        """A lattice point in the relative interior (sum of the rays)."""
        return tuple(sum(r[k] for r in self.rays) for k in range(self.dim))

    def faces(self) -> list["RationalCone"]:
        """All faces, smallest first; each face is given by its canonical rays."""
        base = self.canonical()
        normals = self.halfspaces.normals
        start = frozenset(base.rays)
        seen = {start}
        todo = [start]
        while todo:
            cur = todo.pop()
            for n in normals:
                if all(dot(n, r) == 0 for r in cur):
                    continue
                sub = frozenset(r for r in cur if dot(n, r) == 0)
                if sub not in seen:
                    seen.add(sub)
                    todo.append(sub)
        cones = [RationalCone(self.dim, tuple(s)) for s in seen]
        return sorted(cones, key=lambda c: (c.dimension, c.rays))

    def is_face_of(self, other: "RationalCone") -> bool:
        return any(self.same_as(f) for f in other.faces())

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rays]


def cone_from_inequalities(normals: Iterable[Sequence[int]], dim: int) -> RationalCone:
    """The cone {x : <n, x> >= 0 for every n}, as a ray list (lineality as +-pairs)."""
    normals = [tuple(int(x) for x in n) for n in normals]
    rays, lin = _double_description(normals, dim)
    if lin:
        kernel_rows = [n for n in normals if any(n)]
        basis = hermite_rows(integer_kernel(kernel_rows, dim) if kernel_rows else
                             [tuple(int(i == j) for j in range(dim)) for i in range(dim)])
    else:
        basis = []
    out = list(rays)
    for l in basis:
        out.append(l)
        out.append(tuple(-x for x in l))
    return RationalCone(dim, tuple(out))


def dual_cone(cone: RationalCone) -> RationalCone:
    """{u : <u, v> >= 0 for all v in cone}."""
    return cone_from_inequalities(cone.rays, cone.dim)


def common_face(a: RationalCone, b: RationalCone) -> RationalCone:
    """The intersection of two cones in the same ambient space."""
    if a.dim != b.dim:
        raise InputError("cones live in different ambient spaces")
    return cone_from_inequalities(a.halfspaces.normals + b.halfspaces.normals, a.dim)


def supporting_normal(face: RationalCone, cone: RationalCone) -> Vector | None:
    """A vector u in the dual of ``cone`` with cone ∩ u^⊥ == face, or None."""
    tight = [n for n in cone.halfspaces.normals if all(dot(n, r) == 0 for r in face.rays)]
    u = tuple(sum(n[k] for n in tight) for k in range(cone.dim))
    cut = RationalCone(cone.dim, tuple(r for r in cone.canonical().rays if dot(u, r) == 0))
    return u if cut.same_as(face) else None


# -- Hilbert bases --------------------------------------------------------


def _parallelepiped_points(rays: Sequence[Vector], budget: int) -> list[Vector]:
    """Nonzero lattice points sum(l_i r_i) with 0 <= l_i < 1 (rays independent)."""
    m = len(rays[0])
    lo = [sum(min(0, r[k]) for r in rays) for k in range(m)]
    hi = [sum(max(0, r[k]) for r in rays) for k in range(m)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > budget:
        raise BudgetExceeded("Hilbert basis parallelepiped box", budget, size)
    cols = [[r[k] for r in rays] for k in range(m)]
    # coordinates on which the rays are independent determine the coefficients
    _, rowpiv = rref([list(r) for r in rays], m)
    inv = inverse_rational([cols[k] for k in rowpiv])
    out = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not any(x):
            continue
        lam = matvec(inv, [x[k] for k in rowpiv])
        if not all(0 <= l < 1 for l in lam):
            continue
        if any(sum(l * r[k] for l, r in zip(lam, rays)) != x[k] for k in range(m)):
            continue
        out.append(tuple(x))
    return out


def _pointed_hilbert_basis(rays: list[Vector], dim: int, budget: int) -> list[Vector]:
    if not rays:
        return []
    cone = RationalCone(dim, tuple(rays))
    ext = cone.extremal_rays
    k = rank(ext, dim)
    cands = set(ext)
    for sub in itertools.combinations(ext, k):
        if rank(list(sub), dim) != k:
            continue
        cands.update(_parallelepiped_points(list(sub), budget))
    hb = []
    for x in sorted(cands):
        if not any(c != x and cone.contains(tuple(a - b for a, b in zip(x, c))) for c in cands):
            hb.append(x)
    return hb


def hilbert_basis(cone: RationalCone, budget: int = DEFAULT_BOX_BUDGET):
    """Minimal generators of the monoid of lattice points of ``cone``.

    A basis of the lineality lattice is returned with the generators marked
    inverted; the rest is the Hilbert basis of the pointed quotient, lifted
    back to Z^d.
    """
    from .monoids import AffineMonoid

    d = cone.dim
    lin = cone.lineality
    s, s_inv = saturated_complement(lin, d)
    l = len(lin)
    quot = set()
    for r in cone.canonical().rays:
        y = matvec(s, r)[l:]
        if any(y):
            quot.add(primitive(y))
    hb_q = _pointed_hilbert_basis(sorted(quot), d - l, budget)
    pointed = []
    for y in hb_q:
        x = matvec(s_inv, [0] * l + list(y))
        if lin:
            gram = [[dot(a, b) for b in lin] for a in lin]
            c = solve_rational(gram, [dot(a, x) for a in lin])
            for ci, v in zip(c, lin):
                ci = round(ci)
                x = [a - ci * b for a, b in zip(x, v)]
        pointed.append(tuple(x))
    gens = sorted(set(pointed) | set(lin))
    inverted = [i for i, g in enumerate(gens) if g in set(lin)]
    return AffineMonoid(d, tuple(gens), frozenset(inverted))


# -- fans -----------------------------------------------------------------


@dataclass(frozen=True)
class FanVerdict:
    valid: bool
    failures: tuple[dict, ...] = ()

    @property
    def first_violation(self) -> dict | None:
        return self.failures[0] if self.failures else None


@dataclass(frozen=True)
class Fan:
    dim: int
    cones: tuple[RationalCone, ...] = field(default_factory=tuple)

    @classmethod
    def from_rays(cls, dim: int, rays: Sequence[Sequence[int]],
                  cones: Sequence[Sequence[int]], complete_faces: bool = True) -> "Fan":
        rays = [tuple(int(x) for x in r) for r in rays]
        built = []
        for idx in cones:
            try:
                built.append(RationalCone(dim, tuple(rays[i] for i in idx)))
            except IndexError:
                raise InputError(f"cone {list(idx)} refers to a missing ray") from None
        fan = cls(dim, tuple(built))
        return fan.with_faces() if complete_faces else fan

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        unknown = set(data) - {"dim", "rays", "cones"}
        if unknown:
            raise InputError(f"unknown fan keys: {sorted(unknown)}")
        try:
            dim = int(data["dim"])
            rays = data["rays"]
            cones = data["cones"]
        except KeyError as exc:
            raise InputError(f"fan file is missing key {exc}") from None
        return cls.from_rays(dim, rays, cones)

    def with_faces(self) -> "Fan":
        found: dict[tuple, RationalCone] = {}
        for c in self.cones:
            if not c.is_pointed:
                found[c.rays] = c
                continue
            for f in c.faces():
                found.setdefault(f.rays, f)
        if not found:
            zero = RationalCone(self.dim, ())
            found[zero.rays] = zero
        ordered = sorted(found.values(), key=lambda c: (c.dimension, c.rays))
        return Fan(self.dim, tuple(ordered))

    @property
    def maximal_cones(self) -> list[RationalCone]:
        out = []
        for c in self.cones:
            if not any(o is not c and not o.same_as(c) and o.contains_cone(c) for o in self.cones):
                out.append(c)
        return out

    @property
    def rays(self) -> list[Vector]:
        return sorted({r for c in self.cones for r in c.rays})

    def to_json(self) -> dict:
        rays = self.rays
        index = {r: i for i, r in enumerate(rays)}
        cones = sorted(([index[r] for r in c.rays] for c in self.cones), key=lambda c: (len(c), c))
        return {"cones": cones, "dim": self.dim, "rays": [list(r) for r in rays]}

    def dumps(self) -> str:
        return canonical_json(self.to_json())


def canonical_json(obj) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def fan_validate(fan: Fan) -> FanVerdict:
    """Check strong convexity, face closure and pairwise face intersections."""
    failures: list[dict] = []
    for i, c in enumerate(fan.cones):
        if not c.is_pointed:
            failures.append({"condition": "strongly convex", "cone": i, "rays": c.to_json()})
    if failures:
        return FanVerdict(False, tuple(failures))
    for i, c in enumerate(fan.cones):
        for f in c.faces():
            if not any(f.same_as(o) for o in fan.cones):
                failures.append({"condition": "face closure", "cone": i,
                                 "missing_face": f.to_json()})
    for i, j in itertools.combinations(range(len(fan.cones)), 2):
        a, b = fan.cones[i], fan.cones[j]
        tau = common_face(a, b)
        for k, host in ((i, a), (j, b)):
            if supporting_normal(tau, host) is None:
                failures.append({
                    "condition": "intersection is a face",
                    "cones": [i, j],
                    "not_a_face_of": k,
                    "intersection": tau.to_json(),
                    "witness_ray": list(primitive(tau.interior_point())),
                })
                break
    return FanVerdict(not failures, tuple(failures))


def cone_sum_count(fan: Fan, q: int) -> int:
    """Sum over the cones of (q-1)^(n - dim cone): one torus orbit per cone."""
    return sum((q - 1) ** (fan.dim - c.dimension) for c in fan.cones)


# -- catalogue ------------------------------------------------------------


def _fan(dim, rays, cones):
    return Fan.from_rays(dim, rays, cones)


CATALOGUE_FANS = {
    "A1": lambda: _fan(1, [[1]], [[0]]),
    "P1": lambda: _fan(1, [[1], [-1]], [[0], [1]]),
    "A2": lambda: _fan(2, [[1, 0], [0, 1]], [[0, 1]]),
    "P2": lambda: _fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [2, 0]]),
    "P1xP1": lambda: _fan(2, [[1, 0], [0, 1], [-1, 0], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]]),
    "F1": lambda: _fan(2, [[1, 0], [0, 1], [-1, 1], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]]),
    "A1sing": lambda: _fan(2, [[0, 1], [2, -1]], [[0, 1]]),
    "P112": lambda: _fan(2, [[1, 0], [0, 1], [-1, -2]], [[0, 1], [1, 2], [2, 0]]),
    "P3": lambda: _fan(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
                       [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
}


def catalogue_fan(name: str) -> Fan:
    try:
        return CATALOGUE_FANS[name]()
    except KeyError:
        raise InputError(f"unknown catalogued fan {name!r}") from None
