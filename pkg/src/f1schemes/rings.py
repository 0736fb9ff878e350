"""Finite commutative semirings given by addition and multiplication tables.

Includes prime fields and their extensions GF(p^k), the rings Z/n and the
Boolean semiring.  Element 0 is the additive zero and element 1 the unit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import InputError, UnsupportedError


@dataclass(frozen=True)
class FiniteSemiring:
    name: str
    names: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.check:
            self._check()

    def _check(self):
        n = self.size
        e = range(n)
        for t, op in ((self.add, "+"), (self.mul, "*")):
            if len(t) != n or any(len(r) != n for r in t):
                raise InputError(f"{op} table has wrong shape")
            for x in e:
                for y in e:
                    if t[x][y] != t[y][x]:
                        raise InputError(f"{op} is not commutative")
                    for z in e:
                        if t[t[x][y]][z] != t[x][t[y][z]]:
                            raise InputError(f"{op} is not associative")
        for x in e:
            if self.add[self.zero][x] != x or self.mul[self.one][x] != x:
                raise InputError("0 or 1 is not neutral")
            if self.mul[self.zero][x] != self.zero:
                raise InputError("0 is not absorbing")
            for y in e:
                for z in e:
                    if self.mul[x][self.add[y][z]] != self.add[self.mul[x][y]][self.mul[x][z]]:
                        raise InputError("multiplication does not distribute")

    @property
    def size(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def is_ring(self) -> bool:
        return all(any(self.add[x][y] == self.zero for y in self.elements())
                   for x in self.elements())

    @cached_property
    def unit_indices(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements() if self.one in self.mul[x])

    @cached_property
    def is_local(self) -> bool:
        """Non-units closed under addition (then they form the unique maximal ideal)."""
        non = [x for x in self.elements() if x not in self.unit_indices]
        return all(self.add[x][y] not in self.unit_indices for x in non for y in non)

    def multiplicative_monoid(self):
        from .monoids import FiniteMonoid

        # reorder so the unit comes first: keeps monoid names readable
        return FiniteMonoid(self.names, self.mul, self.one)

    def from_int(self, k: int) -> int:
        """Image of an integer (negative only in rings)."""
        if k < 0:
            if not self.is_ring:
                raise UnsupportedError(f"{self.name} has no additive inverses")
            return self.neg(self.from_int(-k))
        r = self.zero
        for _ in range(k):
            r = self.add[r][self.one]
        return r

    def neg(self, x: int) -> int:
        for y in self.elements():
            if self.add[x][y] == self.zero:
                return y
        raise UnsupportedError(f"{self.names[x]} has no additive inverse in {self.name}")

    def to_json(self) -> dict:
        return {"kind": "semiring", "name": self.name, "elements": list(self.names)}

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.name})"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 and _is_prime(p) else None
    return None


def integers_mod(n: int) -> FiniteSemiring:
    if n < 1:
        raise InputError("Z/n needs n >= 1")
    names = tuple(str(i) for i in range(n))
    add = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    mul = tuple(tuple((i * j) % n for j in range(n)) for i in range(n))
    return FiniteSemiring(f"Z/{n}", names, add, mul, 0, 1 % n)


def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring("B", ("0", "1"), ((0, 1), (1, 1)), ((0, 0), (0, 1)))


def _poly_mulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return tuple(prod[:k])


def _irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k (coeffs low to high)."""
    for low in itertools.product(range(p), repeat=k):
        poly = low + (1,)
        if low[0] == 0:
            continue
        if all(not _divides(f, poly, p) for d in range(1, k // 2 + 1)
               for f in _monics(p, d)):
            return poly
    raise AssertionError("no irreducible polynomial found")


def _monics(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield low + (1,)


def _divides(f, g, p):
    r = list(g)
    df = len(f) - 1
    for d in range(len(r) - 1, df - 1, -1):
        c = r[d]
        if c:
            for i in range(df + 1):
                r[d - df + i] = (r[d - df + i] - c * f[i]) % p
    return not any(r[:df])


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteSemiring:
    """GF(q); elements of GF(p^k) are named by base-p digit strings of their coefficients."""
    pk = prime_power(q)
    if pk is None:
        raise InputError(f"{q} is not a prime power")
    p, k = pk
    if k == 1:
        r = integers_mod(p)
        return FiniteSemiring(f"F{q}", r.names, r.add, r.mul, 0, 1, check=False)
    mod = _irreducible(p, k)
    elems = list(itertools.product(range(p), repeat=k))
    elems.sort(key=lambda c: sum(x * p ** i for i, x in enumerate(c)))
    idx = {c: i for i, c in enumerate(elems)}
    add = tuple(tuple(idx[tuple((x + y) % p for x, y in zip(a, b))] for b in elems) for a in elems)
    mul = tuple(tuple(idx[_poly_mulmod(a, b, mod, p)] for b in elems) for a in elems)
    names = tuple(str(sum(x * p ** i for i, x in enumerate(c))) for c in elems)
    return FiniteSemiring(f"F{q}", names, add, mul, 0, 1, check=False)


def named_semiring(name: str) -> FiniteSemiring:
    """Targets: ``Fq:q`` or ``Fq``, ``Z/n``, ``B`` (Boolean)."""
    s = name.strip()
    if s in ("B", "Bool", "boolean"):
        return boolean_semiring()
    m = re.fullmatch(r"F(?:q:)?(\d+)", s)
    if m:
        return finite_field(int(m[1]))
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        return integers_mod(int(m[1]))
    raise InputError(f"unknown semiring {name!r}")
