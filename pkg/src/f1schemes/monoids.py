"""Commutative monoids (F1-algebras) and their homomorphisms.

Three computable classes are supported:

* ``FiniteMonoid`` -- an explicit multiplication table;
* ``AffineMonoid`` -- a finitely generated submonoid of Z^d, some generators
  marked invertible;
* ``FPMonoid`` -- generators and relations, with bounded word equality.

Elements are plain Python values: table indices, integer tuples, or
exponent tuples over the generators respectively.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Sequence, Union

from .budget import default_budget, resolve_budget
from .errors import BudgetExceeded, InputError, UnsupportedError
from .lattice import LatticeQuotient, Vector, dot, integer_kernel, transpose
from .verdicts import Verdict, counterexample, partial, proven, verified


def _unit_vector(n: int, i: int) -> Vector:
    return tuple(int(i == j) for j in range(n))


def _add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _scale(k: int, u: Sequence[int]) -> Vector:
    return tuple(k * a for a in u)


# -- finite monoids --------------------------------------------------------


@dataclass(frozen=True)
class FiniteMonoid:
    """A commutative monoid given by its multiplication table.

    The constructor checks commutativity, associativity and the unit law
    exhaustively.
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int = 0

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "names", tuple(str(x) for x in self.names))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        t = self.table
        if n == 0:
            raise InputError("a monoid has at least one element")
        if len(set(self.names)) != n:
            raise InputError("element names must be distinct")
        if len(t) != n or any(len(row) != n for row in t):
            raise InputError(f"table must be {n}x{n}")
        if any(not 0 <= x < n for row in t for x in row):
            raise InputError("table entry out of range")
        if not 0 <= self.unit < n:
            raise InputError("unit index out of range")
        for x in range(n):
            if t[self.unit][x] != x:
                raise InputError(f"{self.names[self.unit]} is not a unit: "
                                 f"{self.names[self.unit]}*{self.names[x]} != {self.names[x]}")
            for y in range(x + 1, n):
                if t[x][y] != t[y][x]:
                    raise InputError(f"table is not commutative at ({self.names[x]}, {self.names[y]})")
        for x in range(n):
            rx = t[x]
            for y in range(n):
                rxy = t[rx[y]]
                ry = t[y]
                for z in range(n):
                    if rxy[z] != rx[ry[z]]:
                        raise InputError("table is not associative at "
                                         f"({self.names[x]}, {self.names[y]}, {self.names[z]})")

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def one(self) -> int:
        return self.unit

    def elements(self) -> range:
        return range(self.size)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def eq(self, x: int, y: int) -> bool:
        return x == y

    def index(self, name: str) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise InputError(f"no element named {name!r}") from None

    def power(self, x: int, k: int) -> int:
        if k < 0:
            inv = self.inverse(x)
            if inv is None:
                raise ValueError(f"{self.names[x]} is not invertible")
            x, k = inv, -k
        r = self.unit
        for _ in range(k):
            r = self.table[r][x]
        return r

    def inverse(self, x: int) -> int | None:
        row = self.table[x]
        for y in range(self.size):
            if row[y] == self.unit:
                return y
        return None

    @cached_property
    def unit_indices(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if self.inverse(x) is not None)

    def is_group(self) -> bool:
        return len(self.unit_indices) == self.size

    def submonoid_closure(self, xs: Iterable[int]) -> list[int]:
        seen = {self.unit}
        todo = [self.unit]
        xs = list(xs)
        while todo:
            a = todo.pop()
            for g in xs:
                b = self.table[a][g]
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return sorted(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A generating set chosen greedily in index order."""
        gens: list[int] = []
        reached = {self.unit}
        for x in range(self.size):
            if x not in reached:
                gens.append(x)
                reached = set(self.submonoid_closure(gens))
        return tuple(gens)

    def to_json(self) -> dict:
        return {"kind": "finite", "elements": list(self.names), "unit": self.unit,
                "table": [list(r) for r in self.table]}

    def __repr__(self) -> str:
        return f"FiniteMonoid({{{', '.join(self.names)}}})"


# -- affine monoids -------------------------------------------------------


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of Z^dim generated by ``gens``; generators in ``inverted`` are units.

    Any generator lying in the lineality space of the cone spanned by the
    generators is a unit as well and is added to ``inverted`` on construction.
    """

    dim: int
    gens: tuple[Vector, ...]
    inverted: frozenset[int] = frozenset()
    relation_bound: int | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.gens)
        for g in gens:
            if len(g) != self.dim:
                raise InputError(f"generator {list(g)} has length {len(g)}, expected {self.dim}")
        inv = frozenset(int(i) for i in self.inverted)
        if any(not 0 <= i < len(gens) for i in inv):
            raise InputError("inverted index out of range")
        object.__setattr__(self, "gens", gens)
        normals = self._cone_normals(gens, inv)
        inv = inv | {i for i, g in enumerate(gens) if all(dot(n, g) == 0 for n in normals)}
        object.__setattr__(self, "inverted", frozenset(inv))

    def _cone_normals(self, gens, inv):
        from .cones import RationalCone

        rays = list(gens) + [tuple(-x for x in gens[i]) for i in inv]
        return RationalCone(self.dim, tuple(rays)).halfspaces.normals

    @property
    def one(self) -> Vector:
        return tuple([0] * self.dim)

    def mul(self, x: Vector, y: Vector) -> Vector:
        return _add(x, y)

    def eq(self, x, y) -> bool:
        return tuple(x) == tuple(y)

    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.gens

    def power(self, x: Vector, k: int) -> Vector:
        if k < 0 and not self.contains(_scale(-1, x)):
            raise ValueError(f"{list(x)} is not invertible")
        return _scale(k, x)

    def inverse(self, x: Vector) -> Vector | None:
        y = _scale(-1, x)
        return y if self.contains(y) else None

    @cached_property
    def normals(self) -> tuple[Vector, ...]:
        return self._cone_normals(self.gens, self.inverted)

    @cached_property
    def grading(self) -> Vector:
        """Integer functional, positive on non-unit generators, zero on units."""
        return tuple(sum(n[k] for n in self.normals) for k in range(self.dim))

    @cached_property
    def pointed_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.gens)) if i not in self.inverted)

    @cached_property
    def inverted_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.inverted))

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        return tuple(dot(self.grading, self.gens[i]) for i in self.pointed_indices)

    @cached_property
    def _units_lattice(self) -> LatticeQuotient:
        return LatticeQuotient([self.gens[i] for i in self.inverted_indices], self.dim)

    @cached_property
    def _group_lattice(self) -> LatticeQuotient:
        return LatticeQuotient(list(self.gens), self.dim)

    @cached_property
    def unit_relations(self) -> list[Vector]:
        """Integer relations among the inverted generators (a lattice basis)."""
        h = [self.gens[i] for i in self.inverted_indices]
        if not h:
            return []
        return integer_kernel(transpose(h, self.dim), len(h))

    def decompose(self, x: Sequence[int]) -> tuple[Vector, Vector] | None:
        """Write x = sum a_i p_i + sum c_j h_j (a >= 0 over non-unit generators p,
        c integer over inverted generators h), or return None if x is not in M.

        The search is exact: the grading bounds every a_i.
        """
        return self._decompose(tuple(int(v) for v in x))

    @lru_cache(maxsize=4096)
    def _decompose(self, x: Vector):
        if len(x) != self.dim:
            raise InputError(f"vector {list(x)} has wrong length")
        if not self._group_lattice.contains(x):
            return None
        deg = dot(self.grading, x)
        if deg < 0:
            return None
        pidx = self.pointed_indices
        w = self._weights
        units = self._units_lattice
        a = [0] * len(pidx)

        def rec(pos: int, remaining: int, rest: Vector):
            if pos == len(pidx):
                if remaining:
                    return None
                c = units.coefficients(rest)
                return None if c is None else (tuple(a), tuple(c))
            g = self.gens[pidx[pos]]
            for k in range(remaining // w[pos], -1, -1):
                a[pos] = k
                found = rec(pos + 1, remaining - k * w[pos], _sub(rest, _scale(k, g)))
                if found is not None:
                    return found
            a[pos] = 0
            return None

        return rec(0, deg, x)

    def contains(self, x: Sequence[int]) -> bool:
        return self.decompose(x) is not None

    def evaluate_word(self, a: Sequence[int], c: Sequence[int]) -> Vector:
        out = self.one
        for i, k in zip(self.pointed_indices, a):
            out = _add(out, _scale(k, self.gens[i]))
        for j, k in zip(self.inverted_indices, c):
            out = _add(out, _scale(k, self.gens[j]))
        return out

    @cached_property
    def markov_basis(self) -> tuple[tuple[Vector, Vector, Vector], ...]:
        """Generating relations among the non-unit generators, modulo units.

        Each entry ``(u, v, c)`` means ``sum u_i p_i = sum v_i p_i + sum c_j h_j``.
        Fibres of the monomial map are connected degree by degree up to the
        weight bound ``relation_bound`` (default: the sum of the generator
        weights, at least twice the largest one).
        """
        w = self._weights
        if len(w) < 2:
            return ()
        bound = self.relation_bound
        if bound is None:
            bound = max(sum(w), 2 * max(w))
        units = self._units_lattice
        pidx = self.pointed_indices
        fibres: dict[tuple, list[Vector]] = defaultdict(list)
        count = 0
        limit = default_budget()
        for u in _monomials_up_to(w, bound):
            count += 1
            if count > limit:
                raise BudgetExceeded("Markov basis fibre enumeration", limit)
            img = self.one
            for i, k in zip(pidx, u):
                img = _add(img, _scale(k, self.gens[i]))
            fibres[(dot(self.grading, img), units.key(img))].append(u)
        moves: list[tuple[Vector, Vector, Vector]] = []
        for key in sorted(fibres):
            fib = sorted(fibres[key])
            if len(fib) < 2:
                continue
            index = {u: i for i, u in enumerate(fib)}
            parent = list(range(len(fib)))

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            for u in fib:
                for a, b, _ in moves:
                    for src, dst in ((a, b), (b, a)):
                        if all(x >= y for x, y in zip(u, src)):
                            v = _add(_sub(u, src), dst)
                            if v in index:
                                parent[find(index[u])] = find(index[v])
            roots: dict[int, Vector] = {}
            for u in fib:
                roots.setdefault(find(index[u]), u)
            reps = sorted(roots.values())
            for other in reps[1:]:
                u0 = reps[0]
                diff = _sub(self.evaluate_word(u0, ()), self.evaluate_word(other, ()))
                c = units.coefficients(diff)
                moves.append((u0, other, tuple(c)))
                parent[find(index[other])] = find(index[u0])
        return tuple(moves)

    def presentation(self) -> "Presentation":
        """Generators and binomial relations (inverted generators are Laurent)."""
        k = len(self.gens)
        rels = []
        pidx, hidx = self.pointed_indices, self.inverted_indices
        for c in self.unit_relations:
            lhs = [0] * k
            rhs = [0] * k
            for j, cj in zip(hidx, c):
                if cj > 0:
                    lhs[j] = cj
                else:
                    rhs[j] = -cj
            rels.append((tuple(lhs), tuple(rhs)))
        for u, v, c in self.markov_basis:
            lhs = [0] * k
            rhs = [0] * k
            for i, a in zip(pidx, u):
                lhs[i] = a
            for i, b in zip(pidx, v):
                rhs[i] = b
            for j, cj in zip(hidx, c):
                if cj > 0:
                    rhs[j] += cj
                else:
                    lhs[j] += -cj
            rels.append((tuple(lhs), tuple(rhs)))
        return Presentation(k, self.inverted_indices, tuple(rels))

    def to_json(self) -> dict:
        return {"kind": "affine", "dim": self.dim, "gens": [list(g) for g in self.gens],
                "inverted": list(self.inverted_indices)}

    def __repr__(self) -> str:
        parts = [f"{list(g)}{'^±' if i in self.inverted else ''}" for i, g in enumerate(self.gens)]
        return f"AffineMonoid({', '.join(parts)})"


def _monomials_up_to(weights: Sequence[int], bound: int):
    n = len(weights)
    cur = [0] * n

    def rec(pos, remaining):
        if pos == n:
            yield tuple(cur)
            return
        for k in range(remaining // weights[pos] + 1):
            cur[pos] = k
            yield from rec(pos + 1, remaining - k * weights[pos])
        cur[pos] = 0

    yield from rec(0, bound)


# -- finitely presented monoids ------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Commutative monoid presentation: exponent-vector relations lhs = rhs.

    Variables listed in ``inverted`` are Laurent (their inverses exist).
    """

    nvars: int
    inverted: tuple[int, ...]
    relations: tuple[tuple[Vector, Vector], ...]


@dataclass(frozen=True)
class FPMonoid:
    """Commutative monoid <x_1..x_n | u = v, ...>; elements are exponent vectors.

    Equality is decided by bounded rewriting: two words are equal when a chain
    of relation moves connects them without exceeding ``word_bound`` total
    degree.  No completion procedure is attempted.
    """

    ngens: int
    relations: tuple[tuple[Vector, Vector], ...] = ()
    word_bound: int = field(default=12, compare=False)

    def __post_init__(self):
        rels = []
        for pair in self.relations:
            if len(pair) != 2:
                raise InputError("each relation is a pair of exponent vectors")
            u, v = (tuple(int(x) for x in w) for w in pair)
            if len(u) != self.ngens or len(v) != self.ngens or min(u + v, default=0) < 0:
                raise InputError(f"bad relation {pair}")
            rels.append((u, v))
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def one(self) -> Vector:
        return tuple([0] * self.ngens)

    @property
    def generators(self) -> tuple[Vector, ...]:
        return tuple(_unit_vector(self.ngens, i) for i in range(self.ngens))

    def mul(self, x, y) -> Vector:
        return _add(x, y)

    def power(self, x, k: int) -> Vector:
        if k < 0:
            inv = self.inverse(x)
            if inv is None:
                raise ValueError("element not known to be invertible")
            return _scale(-k, inv)
        return _scale(k, x)

    def inverse(self, x):
        # only detects inverses among words of bounded length
        for w in _monomials_up_to([1] * self.ngens, self.word_bound):
            if self.eq(_add(x, w), self.one):
                return w
        return None

    def eq(self, x, y) -> bool:
        x, y = tuple(x), tuple(y)
        if x == y:
            return True
        seen = {x}
        todo = deque([x])
        while todo:
            w = todo.popleft()
            for a, b in self.relations:
                for src, dst in ((a, b), (b, a)):
                    if all(p >= q for p, q in zip(w, src)):
                        nw = _add(_sub(w, src), dst)
                        if sum(nw) > self.word_bound or nw in seen:
                            continue
                        if nw == y:
                            return True
                        seen.add(nw)
                        todo.append(nw)
        return False

    def presentation(self) -> Presentation:
        return Presentation(self.ngens, (), self.relations)

    def to_json(self) -> dict:
        return {"kind": "fp", "ngens": self.ngens,
                "relations": [[list(u), list(v)] for u, v in self.relations]}


Monoid = Union[FiniteMonoid, AffineMonoid, FPMonoid]


def finite_presentation(m: FiniteMonoid) -> Presentation:
    """Generators and relations for a finite monoid, read off its Cayley graph.

    Relations implied by the others (within the word bound) are dropped.
    """
    gens = m.generators
    k = len(gens)
    word: dict[int, Vector] = {m.unit: tuple([0] * k)}
    order = [m.unit]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for j, g in enumerate(gens):
            y = m.mul(x, g)
            if y not in word:
                word[y] = _add(word[x], _unit_vector(k, j))
                order.append(y)
    rels = []
    for x in order:
        for j, g in enumerate(gens):
            lhs = _add(word[x], _unit_vector(k, j))
            rhs = word[m.mul(x, g)]
            if lhs != rhs:
                rels.append((lhs, rhs))
    rels = sorted(set(rels), key=lambda r: (sum(r[0]) + sum(r[1]), r))
    bound = 2 * max((sum(u) for u, _ in rels), default=1) + 2
    kept: list[tuple[Vector, Vector]] = []
    for r in rels:
        if not FPMonoid(k, tuple(kept), bound).eq(*r):
            kept.append(r)
    return Presentation(k, (), tuple(kept))


# -- homomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Why a hom is a Zariski open: ``identity``, ``isomorphism`` or ``localization``."""

    kind: str
    inverted: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "inverted": [list(x) if isinstance(x, tuple) else x
                                                for x in self.inverted]}


@dataclass(frozen=True)
class MonoidHom:
    """A monoid homomorphism.

    ``images`` lists one target element per source generator; for a finite
    source it is the full element map instead.  Validity (relations, unit,
    units sent to units) is checked on construction unless ``check=False``.
    """

    source: Any
    target: Any
    images: tuple
    certificate: Certificate | None = field(default=None, compare=False)
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(
            tuple(x) if isinstance(x, (list, tuple)) else x for x in self.images))
        if self.check:
            problem = hom_problem(self.source, self.target, self.images)
            if problem:
                raise InputError(f"not a monoid homomorphism: {problem}")

    def __call__(self, x):
        s, t = self.source, self.target
        if isinstance(s, FiniteMonoid):
            return self.images[x]
        if isinstance(s, AffineMonoid):
            dec = s.decompose(x)
            if dec is None:
                raise InputError(f"{list(x)} is not an element of the source")
            a, c = dec
            out = t.one
            for i, k in zip(s.pointed_indices, a):
                out = t.mul(out, t.power(self.images[i], k))
            for j, k in zip(s.inverted_indices, c):
                out = t.mul(out, t.power(self.images[j], k))
            return out
        out = t.one
        for img, k in zip(self.images, x):
            out = t.mul(out, t.power(img, k))
        return out

    @property
    def generator_images(self) -> tuple:
        if isinstance(self.source, FiniteMonoid):
            return tuple(self.images[g] for g in self.source.generators)
        return self.images

    def then(self, other: "MonoidHom") -> "MonoidHom":
        """The composite ``other ∘ self``."""
        return compose(other, self)

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        if isinstance(self.source, FiniteMonoid):
            return self.images == tuple(self.source.elements())
        return all(self.target.eq(a, b) for a, b in zip(self.images, self.source.generators))

    def to_json(self) -> dict:
        out = {"images": [list(x) if isinstance(x, tuple) else x for x in self.images]}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def hom_problem(source, target, images) -> str | None:
    """Return a description of the first failed hom condition, or None."""
    if isinstance(source, FiniteMonoid):
        if len(images) != source.size:
            return f"expected {source.size} images, got {len(images)}"
        if not target.eq(images[source.unit], target.one):
            return "unit not sent to unit"
        for x in source.elements():
            for y in source.elements():
                if not target.eq(images[source.mul(x, y)], target.mul(images[x], images[y])):
                    return f"fails on ({source.names[x]}, {source.names[y]})"
        return None
    if len(images) != len(source.generators):
        return f"expected {len(source.generators)} generator images, got {len(images)}"
    if isinstance(source, AffineMonoid):
        for j in source.inverted_indices:
            if target.inverse(images[j]) is None:
                return f"inverted generator {list(source.gens[j])} not sent to a unit"
        hidx, pidx = source.inverted_indices, source.pointed_indices
        for c in source.unit_relations:
            val = target.one
            for j, k in zip(hidx, c):
                val = target.mul(val, target.power(images[j], k))
            if not target.eq(val, target.one):
                return f"unit relation {list(c)} violated"
        for u, v, c in source.markov_basis:
            lhs, rhs = target.one, target.one
            for i, k in zip(pidx, u):
                lhs = target.mul(lhs, target.power(images[i], k))
            for i, k in zip(pidx, v):
                rhs = target.mul(rhs, target.power(images[i], k))
            for j, k in zip(hidx, c):
                rhs = target.mul(rhs, target.power(images[j], k))
            if not target.eq(lhs, rhs):
                return f"relation {list(u)} = {list(v)} + {list(c)} violated"
        return None
    if isinstance(source, FPMonoid):
        for u, v in source.relations:
            lhs, rhs = target.one, target.one
            for img, k in zip(images, u):
                lhs = target.mul(lhs, target.power(img, k))
            for img, k in zip(images, v):
                rhs = target.mul(rhs, target.power(img, k))
            if not target.eq(lhs, rhs):
                return f"relation {list(u)} = {list(v)} violated"
        return None
    return f"unsupported source {type(source).__name__}"


def compose(g: MonoidHom, f: MonoidHom) -> MonoidHom:
    """g ∘ f; certificates compose when both are structural."""
    cert = None
    if f.certificate and g.certificate:
        if f.certificate.kind == "identity":
            cert = g.certificate
        elif g.certificate.kind == "identity":
            cert = f.certificate
        else:
            cert = Certificate("localization", f.certificate.inverted + tuple(
                x for x in g.certificate.inverted))
    imgs = tuple(g(x) for x in f.images)
    return MonoidHom(f.source, g.target, imgs, cert, check=False)


def identity_hom(m) -> MonoidHom:
    if isinstance(m, FiniteMonoid):
        imgs = tuple(m.elements())
    else:
        imgs = m.generators
    return MonoidHom(m, m, imgs, Certificate("identity"), check=False)


def hom_enumerate(source, target: FiniteMonoid, budget: int | None = None) -> list[MonoidHom]:
    """All homomorphisms source -> target, in lexicographic order of images."""
    if not isinstance(target, FiniteMonoid):
        raise UnsupportedError("hom_enumerate needs a finite target monoid")
    budget = resolve_budget(budget)
    n = target.size
    units = target.unit_indices
    if isinstance(source, FiniteMonoid):
        gens = source.generators
        size = n ** len(gens)
        if size > budget:
            raise BudgetExceeded(f"Hom({len(gens)} generators, {n}-element target)", budget, size)
        out = []
        for assign in itertools.product(range(n), repeat=len(gens)):
            imgs = _extend_from_generators(source, target, gens, assign)
            if imgs is not None:
                out.append(MonoidHom(source, target, imgs, check=False))
        return sorted(out, key=lambda h: h.images)
    if isinstance(source, AffineMonoid):
        choices = [units if i in source.inverted else range(n) for i in range(len(source.gens))]
    elif isinstance(source, FPMonoid):
        choices = [range(n)] * source.ngens
    else:
        raise UnsupportedError(f"cannot enumerate homs from {type(source).__name__}")
    size = 1
    for c in choices:
        size *= len(c)
    if size > budget:
        raise BudgetExceeded(f"Hom({len(choices)} generators, {n}-element target)", budget, size)
    out = []
    for imgs in itertools.product(*choices):
        if hom_problem(source, target, imgs) is None:
            out.append(MonoidHom(source, target, imgs, check=False))
    return out


def _extend_from_generators(source: FiniteMonoid, target, gens, assign):
    img = {source.unit: target.one}
    todo = [source.unit]
    while todo:
        x = todo.pop()
        for g, b in zip(gens, assign):
            y = source.mul(x, g)
            val = target.mul(img[x], b)
            if y in img:
                if img[y] != val:
                    return None
            else:
                img[y] = val
                todo.append(y)
    if len(img) != source.size:
        return None
    return tuple(img[x] for x in source.elements())


# -- localization, units, spectrum --------------------------------------


def localize(m, s: Sequence) -> tuple[Any, MonoidHom]:
    """M[S^-1] with the canonical map; the map carries a localization certificate."""
    if isinstance(m, AffineMonoid):
        s = [tuple(int(v) for v in x) for x in s]
        for x in s:
            if not m.contains(x):
                raise InputError(f"{list(x)} is not an element of the monoid")
        gens = list(m.gens)
        inv = set(m.inverted)
        changed = False
        for x in s:
            if m.inverse(x) is not None:
                continue
            if x in gens:
                if gens.index(x) not in inv:
                    inv.add(gens.index(x))
                    changed = True
            else:
                gens.append(x)
                inv.add(len(gens) - 1)
                changed = True
        cert = Certificate("localization", tuple(s))
        if not changed:
            return m, MonoidHom(m, m, m.gens, cert, check=False)
        loc = AffineMonoid(m.dim, tuple(gens), frozenset(inv), m.relation_bound)
        return loc, MonoidHom(m, loc, m.gens, cert)
    if isinstance(m, FiniteMonoid):
        s = [m.index(x) if isinstance(x, str) else int(x) for x in s]
        return _localize_finite(m, s)
    if isinstance(m, FPMonoid):
        s = [tuple(int(v) for v in x) for x in s]
        rels = list(m.relations)
        k = m.ngens + len(s)
        pad = lambda w: tuple(w) + (0,) * len(s)
        rels = [(pad(u), pad(v)) for u, v in rels]
        for j, x in enumerate(s):
            rels.append((_add(pad(x), _unit_vector(k, m.ngens + j)), tuple([0] * k)))
        loc = FPMonoid(k, tuple(rels), m.word_bound)
        imgs = tuple(pad(g) for g in m.generators)
        return loc, MonoidHom(m, loc, imgs, Certificate("localization", tuple(s)))
    raise UnsupportedError(f"cannot localize {type(m).__name__}")


def _localize_finite(m: FiniteMonoid, s: list[int]):
    cert = Certificate("localization", tuple(m.names[x] for x in s))
    if all(m.inverse(x) is not None for x in s):
        return m, MonoidHom(m, m, tuple(m.elements()), cert, check=False)
    tset = m.submonoid_closure(s)
    pairs = [(a, t) for a in m.elements() for t in tset]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (a, t), (b, u) in itertools.combinations(pairs, 2):
        if any(m.mul(w, m.mul(a, u)) == m.mul(w, m.mul(b, t)) for w in tset):
            parent[find(index[(a, t)])] = find(index[(b, u)])
    classes: dict[int, list] = defaultdict(list)
    for p in pairs:
        classes[find(index[p])].append(p)

    def rep_key(p):
        a, t = p
        return (t != m.unit, a, t)

    reps = sorted((min(c, key=rep_key) for c in classes.values()), key=rep_key)
    cls_of = {}
    for i, r in enumerate(reps):
        for p in classes[find(index[r])]:
            cls_of[p] = i
    names = [m.names[a] if t == m.unit else f"{m.names[a]}/{m.names[t]}" for a, t in reps]
    table = [[cls_of[(m.mul(a, b), m.mul(t, u))] for (b, u) in reps] for (a, t) in reps]
    loc = FiniteMonoid(tuple(names), tuple(tuple(r) for r in table), cls_of[(m.unit, m.unit)])
    imgs = tuple(cls_of[(a, m.unit)] for a in m.elements())
    return loc, MonoidHom(m, loc, imgs, cert)


def units(m):
    """The group of invertible elements, as a monoid."""
    if isinstance(m, FiniteMonoid):
        idx = m.unit_indices
        pos = {x: i for i, x in enumerate(idx)}
        table = tuple(tuple(pos[m.mul(x, y)] for y in idx) for x in idx)
        return FiniteMonoid(tuple(m.names[x] for x in idx), table, pos[m.unit])
    if isinstance(m, AffineMonoid):
        gens = tuple(m.gens[i] for i in m.inverted_indices)
        return AffineMonoid(m.dim, gens, frozenset(range(len(gens))))
    raise UnsupportedError("units need a finite or affine monoid")


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal, stored through the face (saturated submonoid) it misses.

    For a finite monoid ``complement_face`` holds element indices; for an affine
    monoid it holds the indices of the generators lying on the face, and
    ``normal`` is a supporting functional (zero exactly on the face).
    """

    complement_face: frozenset
    elements: frozenset | None = None
    normal: Vector | None = None

    def contains(self, x) -> bool:
        if self.elements is not None:
            return x in self.elements
        return dot(self.normal, x) > 0

    def to_json(self) -> dict:
        out = {"face": sorted(self.complement_face)}
        if self.elements is not None:
            out["prime"] = sorted(self.elements)
        if self.normal is not None:
            out["normal"] = list(self.normal)
        return out


def is_saturated_submonoid(m: FiniteMonoid, face: Iterable[int]) -> bool:
    f = set(face)
    if m.unit not in f:
        return False
    for x in m.elements():
        for y in m.elements():
            xy = m.mul(x, y)
            if (x in f and y in f) != (xy in f):
                return False
    return True


def prime_spectrum(m, budget: int | None = None) -> list[PrimeIdeal]:
    """All prime ideals, the empty ideal first and the maximal ideal last."""
    budget = resolve_budget(budget)
    if isinstance(m, FiniteMonoid):
        others = [x for x in m.elements() if x != m.unit]
        if 2 ** len(others) > budget:
            raise BudgetExceeded("prime spectrum subsets", budget, 2 ** len(others))
        out = []
        for r in range(len(others) + 1):
            for sub in itertools.combinations(others, r):
                face = frozenset((m.unit,) + sub)
                if is_saturated_submonoid(m, face):
                    prime = frozenset(m.elements()) - face
                    out.append(PrimeIdeal(face, prime))
        return sorted(out, key=lambda p: (len(p.elements), sorted(p.elements)))
    if isinstance(m, AffineMonoid):
        normals = m.normals
        start = frozenset(range(len(m.gens)))
        seen = {start}
        todo = [start]
        while todo:
            cur = todo.pop()
            for n in normals:
                if all(dot(n, m.gens[i]) == 0 for i in cur):
                    continue
                sub = frozenset(i for i in cur if dot(n, m.gens[i]) == 0)
                if sub not in seen:
                    seen.add(sub)
                    todo.append(sub)
        out = []
        for face in seen:
            tight = [n for n in normals if all(dot(n, m.gens[i]) == 0 for i in face)]
            u = tuple(sum(n[k] for n in tight) for k in range(m.dim))
            out.append(PrimeIdeal(face, None, u))
        return sorted(out, key=lambda p: (len(m.gens) - len(p.complement_face),
                                          sorted(p.complement_face)))
    raise UnsupportedError("prime spectrum needs a finite or affine monoid")


def maximal_ideal_is_ideal(m) -> bool:
    """Every commutative monoid is local: non-units absorb multiplication."""
    if isinstance(m, FiniteMonoid):
        nonunits = set(m.elements()) - set(m.unit_indices)
        return all(m.mul(x, y) in nonunits for x in nonunits for y in m.elements())
    if isinstance(m, AffineMonoid):
        # x non-unit <=> grading(x) > 0, and the grading is additive and >= 0 on M
        return all(dot(m.grading, m.gens[i]) > 0 for i in m.pointed_indices)
    raise UnsupportedError("locality check needs a finite or affine monoid")


# -- small monoid catalogue ----------------------------------------------


@lru_cache(maxsize=None)
def small_monoids(max_size: int) -> tuple[FiniteMonoid, ...]:
    """Every commutative monoid with at most ``max_size`` elements, up to isomorphism."""
    if max_size > 4:
        raise BudgetExceeded("small monoid catalogue size", 4, max_size)
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        cells = [(i, j) for i in range(1, n) for j in range(i, n)]
        perms = list(itertools.permutations(range(1, n)))
        for vals in itertools.product(range(n), repeat=len(cells)):
            t = [[0] * n for _ in range(n)]
            for k in range(n):
                t[0][k] = t[k][0] = k
            for (i, j), v in zip(cells, vals):
                t[i][j] = t[j][i] = v
            if not _assoc(t, n):
                continue
            canon = min(_relabel(t, (0,) + p) for p in perms)
            if canon in seen:
                continue
            seen.add(canon)
        names = ("1", "a", "b", "c")[:n]
        for canon in sorted(seen):
            out.append(FiniteMonoid(names, canon, 0))
    return tuple(out)


def _assoc(t, n) -> bool:
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(1, n) for y in range(1, n)
               for z in range(1, n))


def _relabel(t, p):
    n = len(p)
    inv = [0] * n
    for new, old in enumerate(p):
        inv[old] = new
    return tuple(tuple(inv[t[p[i]][p[j]]] for j in range(n)) for i in range(n))


# -- named monoids and JSON ------------------------------------------------


def cyclic_group(n: int) -> FiniteMonoid:
    if n < 1:
        raise InputError("Z/n needs n >= 1")
    names = tuple(str(i) for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteMonoid(names, table, 0)


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("1",), ((0,),), 0)


def absorbing_monoid() -> FiniteMonoid:
    """{1, 0} under multiplication."""
    return FiniteMonoid(("1", "0"), ((0, 1), (1, 1)), 0)


def free_monoid(rank: int) -> AffineMonoid:
    return AffineMonoid(rank, tuple(_unit_vector(rank, i) for i in range(rank)))


def free_group(rank: int) -> AffineMonoid:
    return AffineMonoid(rank, tuple(_unit_vector(rank, i) for i in range(rank)),
                        frozenset(range(rank)))


def multiplicative_monoid(q: int) -> FiniteMonoid:
    """The multiplicative monoid (F_q, ·), zero included."""
    from .rings import finite_field

    return finite_field(q).multiplicative_monoid()


_NAMED = [
    (re.compile(r"^(N|Z)(?:\^(\d+))?$"), lambda m: (free_monoid if m[1] == "N" else free_group)(
        int(m[2] or 1))),
    (re.compile(r"^Z/(\d+)$"), lambda m: cyclic_group(int(m[1]))),
    (re.compile(r"^(triv|F1)$"), lambda m: trivial_monoid()),
    (re.compile(r"^absorbing$"), lambda m: absorbing_monoid()),
    (re.compile(r"^Fq\*:(\d+)$"), lambda m: multiplicative_monoid(int(m[1]))),
]


def named_monoid(name: str):
    """Built-in monoids: N, Z, N^k, Z^k, Z/n, triv (alias F1), absorbing, Fq*:q."""
    for pat, build in _NAMED:
        mt = pat.match(name.strip())
        if mt:
            return build(mt)
    raise InputError(f"unknown monoid name {name!r}")


def monoid_from_json(data) -> Monoid:
    if isinstance(data, str):
        return named_monoid(data)
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("monoid spec must be a name or an object with a 'kind' key")
    kind = data["kind"]
    allowed = {"affine": {"kind", "dim", "gens", "inverted", "relation_bound"},
               "finite": {"kind", "elements", "unit", "table"},
               "fp": {"kind", "ngens", "relations", "word_bound"}}
    if kind not in allowed:
        raise InputError(f"unknown monoid kind {kind!r}")
    unknown = set(data) - allowed[kind]
    if unknown:
        raise InputError(f"unknown keys for {kind} monoid: {sorted(unknown)}")
    try:
        if kind == "affine":
            return AffineMonoid(int(data["dim"]), tuple(tuple(g) for g in data["gens"]),
                                frozenset(data.get("inverted", [])), data.get("relation_bound"))
        if kind == "finite":
            return FiniteMonoid(tuple(data["elements"]),
                                tuple(tuple(r) for r in data["table"]), int(data.get("unit", 0)))
        return FPMonoid(int(data["ngens"]),
                        tuple((tuple(u), tuple(v)) for u, v in data.get("relations", [])),
                        int(data.get("word_bound", 12)))
    except KeyError as exc:
        raise InputError(f"{kind} monoid spec is missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad {kind} monoid spec: {exc}") from None


# -- epimorphisms ------------------------------------------------------


def _restriction_key(f: MonoidHom, h: MonoidHom) -> tuple:
    return tuple(h(x) for x in f.images)


def is_epimorphism_bounded(f: MonoidHom, bound: int, budget: int | None = None) -> Verdict:
    """Is restriction along f injective on Hom(target, C) for every finite C with |C| <= bound?

    Structural certificates (identity, isomorphism, localization) are accepted
    without search.
    """
    if f.certificate is not None and f.certificate.kind in ("identity", "isomorphism",
                                                            "localization"):
        return proven(f"structural {f.certificate.kind}")
    if f.is_identity():
        return proven("identity")
    checked = 0
    try:
        catalogue = small_monoids(bound)
    except BudgetExceeded as exc:
        return partial(bound, str(exc))
    for c in catalogue:
        try:
            homs = hom_enumerate(f.target, c, budget)
        except BudgetExceeded as exc:
            return partial(bound, f"stopped at {c!r}: {exc}")
        groups: dict[tuple, MonoidHom] = {}
        for h in homs:
            checked += 1
            key = _restriction_key(f, h)
            if key in groups:
                return counterexample({"target": c.to_json(), "hom1": groups[key].to_json(),
                                       "hom2": h.to_json()}, bound,
                                      "two distinct homs agree after restriction")
            groups[key] = h
    return verified(bound, f"no counterexample among {len(catalogue)} monoids", checked)
