"""Monoid algebras N[M], Z[M], base change N -> Z and group completion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Any, Callable, Sequence

from .budget import resolve_budget
from .cones import hermite_rows
from .errors import BudgetExceeded, InputError, UnsupportedError
from .lattice import smith_normal_form, solve_integer, transpose
from .monoids import (AffineMonoid, Certificate, FiniteMonoid, FPMonoid,
                      MonoidHom, Presentation, finite_presentation, free_group, hom_enumerate,
                      localize)
from .rings import FiniteSemiring
from .verdicts import Verdict, counterexample, verified

BASES = ("N", "Z")


def _elem_key(x):
    return x if isinstance(x, int) else tuple(x)


@dataclass(frozen=True)
class MonoidAlgebraElement:
    """Finite sum of coefficient * monoid element; zero coefficients are never stored."""

    terms: tuple[tuple[Any, int], ...]
    base: str = "Z"

    def __post_init__(self):
        if self.base not in BASES:
            raise InputError(f"unknown coefficient base {self.base!r}")
        acc: dict = {}
        for m, c in self.terms:
            k = _elem_key(m)
            acc[k] = acc.get(k, 0) + int(c)
        if self.base == "N" and any(c < 0 for c in acc.values()):
            raise InputError("negative coefficient in an N-algebra element")
        object.__setattr__(self, "terms", tuple(sorted((m, c) for m, c in acc.items() if c)))

    def coefficient(self, m) -> int:
        return dict(self.terms).get(_elem_key(m), 0)

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class MonoidAlgebra:
    """The free N- or Z-module on a monoid with convolution product.

    ``relations`` holds extra identities ``lhs = rhs`` imposed on the quotient;
    only binomial ones (single monomial on each side) can be base-changed.
    """

    monoid: Any
    base: str = "Z"
    relations: tuple[tuple[MonoidAlgebraElement, MonoidAlgebraElement], ...] = ()

    def __post_init__(self):
        if self.base not in BASES:
            raise InputError(f"base must be one of {BASES}")
        if not isinstance(self.monoid, (AffineMonoid, FiniteMonoid, FPMonoid)):
            raise UnsupportedError(f"no monoid algebra for {type(self.monoid).__name__}")

    def element(self, terms) -> MonoidAlgebraElement:
        if isinstance(terms, dict):
            terms = terms.items()
        return MonoidAlgebraElement(tuple(terms), self.base)

    def monomial(self, m, c: int = 1) -> MonoidAlgebraElement:
        return self.element([(m, c)])

    @property
    def zero(self) -> MonoidAlgebraElement:
        return self.element([])

    @property
    def one(self) -> MonoidAlgebraElement:
        return self.monomial(self.monoid.one)

    def add(self, a: MonoidAlgebraElement, b: MonoidAlgebraElement) -> MonoidAlgebraElement:
        return self.element(a.terms + b.terms)

    def neg(self, a: MonoidAlgebraElement) -> MonoidAlgebraElement:
        if self.base == "N":
            raise UnsupportedError("N-algebras have no additive inverses")
        return self.element([(m, -c) for m, c in a.terms])

    def mul(self, a: MonoidAlgebraElement, b: MonoidAlgebraElement) -> MonoidAlgebraElement:
        return self.element([(self.monoid.mul(m, n), c * d)
                             for m, c in a.terms for n, d in b.terms])

    def power(self, a: MonoidAlgebraElement, k: int) -> MonoidAlgebraElement:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    @cached_property
    def presentation(self) -> Presentation:
        """Polynomial (Laurent in inverted variables) generators and binomial relations."""
        m = self.monoid
        if isinstance(m, FiniteMonoid):
            return finite_presentation(m)
        return m.presentation()

    @property
    def is_binomial(self) -> bool:
        return all(len(l.terms) == 1 and len(r.terms) == 1 and l.terms[0][1] == 1
                   and r.terms[0][1] == 1 for l, r in self.relations)

    def generator_names(self) -> list[str]:
        return [f"x{i}" for i in range(self.presentation.nvars)]

    def pretty(self) -> str:
        """Canonical text form, e.g. ``Z[x0,x1,x2]/(x0*x2 - x1^2)``."""
        pres = self.presentation
        names = self.generator_names()
        vars_ = []
        for i, n in enumerate(names):
            vars_.append(n)
            if i in pres.inverted:
                vars_.append(f"{n}^-1")
        head = f"{self.base}[{','.join(vars_)}]"
        rels = []
        for u, v in pres.relations:
            if u < v:
                u, v = v, u
            a, b = _monomial_str(u, names), _monomial_str(v, names)
            rels.append(f"{a} - {b}" if self.base == "Z" else f"{a} = {b}")
        for l, r in self.relations:
            rels.append(f"{self.element_str(l)} = {self.element_str(r)}")
        return head + (f"/({', '.join(rels)})" if rels else "")

    def generator_labels(self) -> list[str]:
        """What each polynomial variable stands for inside the monoid."""
        m = self.monoid
        if isinstance(m, AffineMonoid):
            return [_laurent_str(g) for g in m.gens]
        if isinstance(m, FiniteMonoid):
            return [m.names[g] for g in m.generators]
        return [f"g{i}" for i in range(m.ngens)]

    def element_str(self, a: MonoidAlgebraElement) -> str:
        if not a.terms:
            return "0"
        parts = []
        for mon, c in a.terms:
            s = self._monoid_elem_str(mon)
            if s == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(s)
            elif c == -1:
                parts.append(f"-{s}")
            else:
                parts.append(f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")

    def _monoid_elem_str(self, x) -> str:
        m = self.monoid
        if isinstance(m, FiniteMonoid):
            return "1" if x == m.unit else f"[{m.names[x]}]"
        if isinstance(m, AffineMonoid):
            return _laurent_str(x)
        return _monomial_str(x, [f"g{i}" for i in range(m.ngens)])

    def to_json(self) -> dict:
        return {"base": self.base, "presentation": self.pretty(),
                "generators": dict(zip(self.generator_names(), self.generator_labels()))}


def _monomial_str(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def _laurent_str(v: Sequence[int]) -> str:
    """Ambient character notation: (1,-2) -> t1*t2^-2."""
    return _monomial_str(v, [f"t{i + 1}" for i in range(len(v))])


def monoid_algebra(m, base: str = "Z") -> MonoidAlgebra:
    return MonoidAlgebra(m, base)


def base_change_N_to_Z(a: MonoidAlgebra) -> MonoidAlgebra:
    """N[M]/(binomials) -> Z[M]/(same binomials)."""
    if a.base != "N":
        raise InputError("base change N -> Z expects an N-algebra")
    if not a.is_binomial:
        raise UnsupportedError("only binomial quotients of N[M] can be base-changed")
    rels = tuple((MonoidAlgebraElement(l.terms, "Z"), MonoidAlgebraElement(r.terms, "Z"))
                 for l, r in a.relations)
    return MonoidAlgebra(a.monoid, "Z", rels)


def base_change_F1(m, base: str) -> MonoidAlgebra:
    """The functor - (x)_F1 base : monoids -> base-algebras."""
    return MonoidAlgebra(m, base)


def algebra_map(f: MonoidHom, base: str = "Z") -> Callable[[MonoidAlgebraElement],
                                                           MonoidAlgebraElement]:
    """base[f] : base[source] -> base[target]."""
    tgt = MonoidAlgebra(f.target, base)

    def apply(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
        return tgt.element([(f(m), c) for m, c in x.terms])

    return apply


def same_presentation(a: MonoidAlgebra, b: MonoidAlgebra) -> bool:
    return a.presentation == b.presentation and a.relations == b.relations


# -- homs into finite semirings ---------------------------------------------


def ring_homs(a: MonoidAlgebra, target: FiniteSemiring, budget: int | None = None) -> list[tuple]:
    """Homs base[M] -> target via the adjunction: monoid homs M -> (target, *).

    Each hom is returned as its tuple of monoid-generator images.
    """
    if a.base == "Z" and not target.is_ring:
        return []
    homs = hom_enumerate(a.monoid, target.multiplicative_monoid(), budget)
    return [h.generator_images for h in homs if _respects(a, target, h)]


def _respects(a: MonoidAlgebra, target: FiniteSemiring, h: MonoidHom) -> bool:
    for l, r in a.relations:
        if _eval_elem(l, target, h) != _eval_elem(r, target, h):
            return False
    return True


def _eval_elem(x: MonoidAlgebraElement, target: FiniteSemiring, h: MonoidHom) -> int:
    out = target.zero
    for m, c in x.terms:
        val = target.mul[target.from_int(c)][h(m)]
        out = target.add[out][val]
    return out


def ring_homs_direct(a: MonoidAlgebra, target: FiniteSemiring,
                     budget: int | None = None) -> int:
    """Count homs by evaluating the polynomial presentation in the target.

    Independent of the monoid-hom route: variables get arbitrary target
    values (units for Laurent variables), relations are checked as
    polynomial identities with the target's own + and *.
    """
    if a.relations:
        raise UnsupportedError("direct count covers plain monoid algebras only")
    if a.base == "Z" and not target.is_ring:
        return 0
    pres = a.presentation
    budget = resolve_budget(budget)
    size = target.size ** pres.nvars
    if size > budget:
        raise BudgetExceeded("direct ring-hom enumeration", budget, size)
    units = set(target.unit_indices)

    def mono(vals, exps):
        r = target.one
        for v, e in zip(vals, exps):
            for _ in range(e):
                r = target.mul[r][v]
        return r

    count = 0
    for vals in itertools.product(target.elements(), repeat=pres.nvars):
        if any(vals[i] not in units for i in pres.inverted):
            continue
        if all(mono(vals, u) == mono(vals, v) for u, v in pres.relations):
            count += 1
    return count


# -- group completion ------------------------------------------------------


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank + Z/n_1 + ... with n_1 | n_2 | ... and every n_i > 1."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if self.free_rank < 0 or any(x <= 1 for x in t):
            raise InputError("invariant factors must exceed 1")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise InputError("invariant factors must divide each other")
        object.__setattr__(self, "torsion", t)

    @property
    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Moduli of the coordinates (0 = free)."""
        return (0,) * self.free_rank + self.torsion

    def is_trivial(self) -> bool:
        return not self.free_rank and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GroupCompletion:
    """K(M) with coordinates: ``coords(m)`` lists m's components in ``group.moduli``."""

    group: FGAbelianGroup
    coords: Callable[[Any], tuple[int, ...]] = field(compare=False)
    hom: MonoidHom | None = field(default=None, compare=False)


def group_completion(m) -> tuple[FGAbelianGroup, MonoidHom]:
    c = completion(m)
    return c.group, c.hom


def completion(m) -> GroupCompletion:
    if isinstance(m, AffineMonoid):
        return _affine_completion(m)
    if isinstance(m, FiniteMonoid):
        return _finite_completion(m)
    raise UnsupportedError("group completion needs a finite or affine monoid")


def _affine_completion(m: AffineMonoid) -> GroupCompletion:
    basis = hermite_rows(m.gens)
    r = len(basis)
    cols = transpose(basis, m.dim) if basis else []

    def coords(x):
        if not r:
            return ()
        sol = solve_integer(cols, list(x), r)
        if sol is None:
            raise InputError(f"{list(x)} is not in the group generated by the monoid")
        return tuple(sol)

    target = free_group(r) if r else FiniteMonoid(("0",), ((0,),), 0)
    imgs = tuple(coords(g) if r else 0 for g in m.gens)
    hom = MonoidHom(m, target, imgs, Certificate("localization", ("all",)))
    return GroupCompletion(FGAbelianGroup(r, ()), coords, hom)


def _finite_completion(m: FiniteMonoid) -> GroupCompletion:
    # K(M) = M localized at every element; the result is a finite group
    grp, loc = localize(m, list(m.elements()))
    pres = finite_presentation(grp)
    k = pres.nvars
    words = _words(grp, pres)
    rows = [[a - b for a, b in zip(u, v)] for u, v in pres.relations]
    if not k:
        fg = FGAbelianGroup(0, ())
        return GroupCompletion(fg, lambda x: (), MonoidHom(m, grp, loc.images, loc.certificate))
    if rows:
        d, _, t = smith_normal_form(rows, len(rows), k)
        diag = [d[i][i] if i < len(rows) else 0 for i in range(k)]
    else:
        t = [[int(i == j) for j in range(k)] for i in range(k)]
        diag = [0] * k
    keep = [j for j in range(k) if diag[j] != 1]
    moduli = [diag[j] for j in keep]
    free = sum(1 for x in moduli if x == 0)
    torsion = sorted(x for x in moduli if x)
    order = [j for j in keep if diag[j] == 0] + sorted((j for j in keep if diag[j]),
                                                       key=lambda j: diag[j])

    def coords(x):
        w = words[loc.images[x]]
        y = [sum(w[i] * t[i][j] for i in range(k)) for j in range(k)]
        return tuple(y[j] % diag[j] if diag[j] else y[j] for j in order)

    return GroupCompletion(FGAbelianGroup(free, tuple(torsion)), coords,
                           MonoidHom(m, grp, loc.images, loc.certificate))


def _words(m: FiniteMonoid, pres: Presentation) -> dict[int, tuple[int, ...]]:
    gens = m.generators
    k = len(gens)
    out = {m.unit: (0,) * k}
    todo = [m.unit]
    while todo:
        x = todo.pop(0)
        for j, g in enumerate(gens):
            y = m.mul(x, g)
            if y not in out:
                out[y] = tuple(a + (i == j) for i, a in enumerate(out[x]))
                todo.append(y)
    return out


def group_homs(k: FGAbelianGroup, g: FiniteMonoid) -> list[tuple[int, ...]]:
    """Homs K -> G as tuples of images of the cyclic generators of K."""
    if not g.is_group():
        raise InputError("target must be a group")
    choices = []
    for n in k.moduli:
        if n == 0:
            choices.append(list(g.elements()))
        else:
            choices.append([x for x in g.elements() if g.power(x, n) == g.unit])
    return list(itertools.product(*choices))


def universal_property_check(m, g: FiniteMonoid) -> Verdict:
    """|Hom_Mon(M, G)| = |Hom_Grp(K(M), G)| with restriction along M -> K(M) a bijection."""
    comp = completion(m)
    mon = hom_enumerate(m, g)
    grp = group_homs(comp.group, g)
    gens = m.generators

    def restrict(phi):
        out = []
        for x in gens:
            val = g.unit
            for img, c in zip(phi, comp.coords(x)):
                val = g.mul(val, g.power(img, c))
            out.append(val)
        return tuple(out)

    restricted = [restrict(phi) for phi in grp]
    mon_keys = sorted(h.generator_images for h in mon)
    detail = f"|Hom_Mon(M,G)|={len(mon)}, |Hom_Grp(K(M),G)|={len(grp)}"
    if len(set(restricted)) != len(restricted):
        return counterexample({"restriction": "not injective"}, detail=detail)
    if sorted(restricted) != mon_keys:
        return counterexample({"restriction": "not onto"}, detail=detail)
    return verified(g.size, detail, len(mon))
