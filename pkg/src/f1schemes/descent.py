"""Bounded checks of flat descent for modules over finite monoids.

A module over a monoid A (in sets) is an A-set: a finite set with an action
of A.  Base change along f: A -> B is the coequalizer M x_A B, computed with
union-find.  Every check here enumerates finite instances up to a size bound
and reports what it covered; none of them is a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import BudgetExceeded, InputError
from .budget import resolve_budget
from .monoids import FiniteMonoid, MonoidHom, hom_enumerate, small_monoids
from .verdicts import Verdict, counterexample, partial, verified


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


# -- A-sets ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteASet:
    """``action[a][x]`` is a.x; checked to be a unital action of ``monoid``."""

    monoid: FiniteMonoid
    size: int
    action: tuple[tuple[int, ...], ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(tuple(r) for r in self.action))
        if not self.check:
            return
        a, n = self.monoid, self.size
        if len(self.action) != a.size or any(len(r) != n for r in self.action):
            raise InputError("action table has wrong shape")
        if any(not 0 <= y < n for r in self.action for y in r):
            raise InputError("action value out of range")
        if any(self.action[a.unit][x] != x for x in range(n)):
            raise InputError("unit does not act as the identity")
        for s in a.elements():
            for t in a.elements():
                st = self.action[a.mul(s, t)]
                for x in range(n):
                    if st[x] != self.action[s][self.action[t][x]]:
                        raise InputError("action is not compatible with the monoid law")

    def act(self, a: int, x: int) -> int:
        return self.action[a][x]

    def to_json(self) -> dict:
        return {"size": self.size, "action": [list(r) for r in self.action]}


def free_aset(a: FiniteMonoid) -> FiniteASet:
    """A acting on itself."""
    return FiniteASet(a, a.size, a.table, check=False)


def restrict(x: FiniteASet, f: MonoidHom) -> FiniteASet:
    """View a B-set as an A-set through f: A -> B."""
    a = f.source
    return FiniteASet(a, x.size, tuple(x.action[f(s)] for s in a.elements()), check=False)


def _canonical(a: FiniteMonoid, action, n: int):
    best = None
    for p in itertools.permutations(range(n)):
        inv = [0] * n
        for new, old in enumerate(p):
            inv[old] = new
        cand = tuple(tuple(inv[action[s][p[i]]] for i in range(n)) for s in a.elements())
        if best is None or cand < best:
            best = cand
    return best


@lru_cache(maxsize=None)
def enumerate_asets(a: FiniteMonoid, max_size: int) -> tuple[FiniteASet, ...]:
    """All A-sets with at most ``max_size`` points (the empty one included), up to iso."""
    out = []
    gens = a.generators
    for n in range(max_size + 1):
        seen = set()
        funcs = list(itertools.product(range(n), repeat=n))
        for choice in itertools.product(funcs, repeat=len(gens)):
            action = _extend_action(a, gens, choice, n)
            if action is None:
                continue
            seen.add(_canonical(a, action, n))
        out += [FiniteASet(a, n, act, check=False) for act in sorted(seen)]
    return tuple(out)


def _extend_action(a: FiniteMonoid, gens, choice, n):
    act = {a.unit: tuple(range(n))}
    todo = [a.unit]
    while todo:
        s = todo.pop()
        for g, fg in zip(gens, choice):
            t = a.mul(s, g)
            # t.x = s.(g.x)
            val = tuple(act[s][fg[x]] for x in range(n))
            if t in act:
                if act[t] != val:
                    return None
            else:
                act[t] = val
                todo.append(t)
    return tuple(act[s] for s in a.elements())


def aset_maps(x: FiniteASet, y: FiniteASet) -> list[tuple[int, ...]]:
    """All equivariant maps x -> y."""
    gens = x.monoid.generators
    out = []
    for f in itertools.product(range(y.size), repeat=x.size):
        if all(f[x.action[g][i]] == y.action[g][f[i]] for g in gens for i in range(x.size)):
            out.append(f)
    return out


def product_aset(x: FiniteASet, y: FiniteASet) -> FiniteASet:
    a = x.monoid
    pairs = [(i, j) for i in range(x.size) for j in range(y.size)]
    idx = {p: k for k, p in enumerate(pairs)}
    act = tuple(tuple(idx[(x.action[s][i], y.action[s][j])] for i, j in pairs)
                for s in a.elements())
    return FiniteASet(a, len(pairs), act, check=False)


def terminal_aset(a: FiniteMonoid) -> FiniteASet:
    return FiniteASet(a, 1, tuple((0,) for _ in a.elements()), check=False)


# -- tensor products -------------------------------------------------------


@dataclass(frozen=True)
class Tensor:
    """x (x)_A B along f, with the class map on pairs (point of x, element of B)."""

    aset: FiniteASet
    cls: tuple[tuple[int, ...], ...]  # cls[s][b]
    reps: tuple[tuple[int, int], ...]

    def of(self, s: int, b: int) -> int:
        return self.cls[s][b]


@lru_cache(maxsize=200_000)
def tensor(x: FiniteASet, f: MonoidHom) -> Tensor:
    a, b = f.source, f.target
    nb = b.size
    uf = _UnionFind(x.size * nb)
    gens = a.generators
    for s in range(x.size):
        for c in range(nb):
            for g in gens:
                # (g.s, c) ~ (s, f(g) c)
                uf.union(x.action[g][s] * nb + c, s * nb + b.mul(f(g), c))
    roots = sorted({uf.find(k) for k in range(x.size * nb)})
    pos = {r: i for i, r in enumerate(roots)}
    cls = tuple(tuple(pos[uf.find(s * nb + c)] for c in range(nb)) for s in range(x.size))
    reps = tuple(divmod(r, nb) for r in roots)
    act = tuple(tuple(cls[s][b.mul(t, c)] for s, c in reps) for t in b.elements())
    return Tensor(FiniteASet(b, len(roots), act, check=False), cls, reps)


def tensor_aset(x: FiniteASet, f: MonoidHom) -> FiniteASet:
    """Base change x (x)_A B along f: A -> B."""
    if f.source != x.monoid:
        raise InputError("the hom does not start at the module's monoid")
    return tensor(x, f).aset


def tensor_map(u: Sequence[int], x: FiniteASet, y: FiniteASet, f: MonoidHom) -> tuple[int, ...]:
    """u (x) B for an A-map u: x -> y."""
    tx, ty = tensor(x, f), tensor(y, f)
    return tuple(ty.of(u[s], c) for s, c in tx.reps)


def pushout(legs: Sequence[MonoidHom]) -> tuple[FiniteMonoid, list[tuple[int, ...]]]:
    """B_1 (x)_A ... (x)_A B_r with the embeddings of each factor (as element maps)."""
    a = legs[0].source
    bs = [f.target for f in legs]
    tuples = list(itertools.product(*[range(b.size) for b in bs]))
    idx = {t: k for k, t in enumerate(tuples)}
    uf = _UnionFind(len(tuples))
    r = len(legs)
    for t in tuples:
        for g in a.generators:
            for p in range(r):
                for q in range(r):
                    if p == q:
                        continue
                    # move f(g) from factor p to factor q
                    u = list(t)
                    u[p] = bs[p].mul(legs[p](g), t[p])
                    v = list(t)
                    v[q] = bs[q].mul(legs[q](g), t[q])
                    uf.union(idx[tuple(u)], idx[tuple(v)])
    roots = sorted({uf.find(k) for k in range(len(tuples))})
    pos = {root: i for i, root in enumerate(roots)}
    cls = [pos[uf.find(k)] for k in range(len(tuples))]
    reps = [tuples[root] for root in roots]
    names = tuple("(" + ",".join(bs[p].names[e] for p, e in enumerate(t)) + ")" for t in reps)
    table = tuple(tuple(cls[idx[tuple(bs[p].mul(x[p], y[p]) for p in range(r))]] for y in reps)
                  for x in reps)
    unit = cls[idx[tuple(b.unit for b in bs)]]
    mon = FiniteMonoid(names, table, unit)
    emb = []
    for p in range(r):
        emb.append(tuple(cls[idx[tuple(e if k == p else bs[k].unit for k in range(r))]]
                         for e in bs[p].elements()))
    return mon, emb


@lru_cache(maxsize=None)
def _pushout_cached(legs: tuple[MonoidHom, ...]):
    mon, emb = pushout(legs)
    homs = tuple(MonoidHom(f.target, mon, e, check=False) for f, e in zip(legs, emb))
    return mon, homs


# -- covers ----------------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    base: FiniteMonoid
    legs: tuple[MonoidHom, ...]

    def __post_init__(self):
        if not self.legs:
            raise InputError("a cover needs at least one leg")
        if any(f.source != self.base for f in self.legs):
            raise InputError("all legs must start at the base monoid")

    def is_split(self) -> bool:
        """Some leg has a retraction r with r . f = id."""
        return any(_has_retraction(f) for f in self.legs)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(),
                "legs": [{"target": f.target.to_json(), "images": list(f.images)}
                         for f in self.legs]}


def _has_retraction(f: MonoidHom) -> bool:
    for r in hom_enumerate(f.target, f.source):
        if all(r(f(s)) == s for s in f.source.elements()):
            return True
    return False


def cover_from_json(data: dict) -> Cover:
    from .monoids import monoid_from_json

    unknown = set(data) - {"base", "legs"}
    if unknown:
        raise InputError(f"unknown cover keys: {sorted(unknown)}")
    base = monoid_from_json(data["base"])
    if not isinstance(base, FiniteMonoid):
        raise InputError("the base of a cover must be a finite monoid")
    legs = []
    for leg in data["legs"]:
        tgt = monoid_from_json(leg["target"])
        if not isinstance(tgt, FiniteMonoid):
            raise InputError("cover legs must land in finite monoids")
        imgs = leg.get("images")
        if imgs is None:
            imgs = list(base.elements())
        imgs = [tgt.index(v) if isinstance(v, str) else int(v) for v in imgs]
        legs.append(MonoidHom(base, tgt, tuple(imgs)))
    return Cover(base, tuple(legs))


def identity_cover(a: FiniteMonoid) -> Cover:
    return Cover(a, (MonoidHom(a, a, tuple(a.elements()), check=False),))


# -- flatness and conservativity ---------------------------------------------


def _bijective(m: Sequence[int], n: int) -> bool:
    return len(m) == n and len(set(m)) == n


def is_flat_bounded(f: MonoidHom, bound: int, budget: int | None = None) -> Verdict:
    """Does - (x)_A B preserve the terminal object, binary products and equalizers
    of A-sets with at most ``bound`` points?"""
    budget = resolve_budget(budget)
    a = f.source
    t = tensor(terminal_aset(a), f).aset
    if t.size != 1:
        return counterexample({"limit": "terminal", "tensor_size": t.size}, bound,
                              "the terminal A-set is not sent to a point")
    objs = enumerate_asets(a, bound)
    work = 0
    for x, y in itertools.combinations_with_replacement(objs, 2):
        work += 1
        if work > budget:
            return partial(bound, "flatness budget exhausted on products")
        p = product_aset(x, y)
        tp, tx, ty = tensor(p, f), tensor(x, f), tensor(y, f)
        images = []
        for k, c in tp.reps:
            i, j = divmod(k, y.size)
            images.append((tx.of(i, c), ty.of(j, c)))
        if len(set(images)) != len(images) or len(images) != tx.aset.size * ty.aset.size:
            return counterexample({"limit": "product", "x": x.to_json(), "y": y.to_json()},
                                  bound, "(X x Y) (x) B -> (X (x) B) x (Y (x) B) is not bijective")
    for x in objs:
        for y in objs:
            maps = aset_maps(x, y)
            work += len(maps) ** 2
            if work > budget:
                return partial(bound, "flatness budget exhausted on equalizers")
            tx = tensor(x, f)
            for u, v in itertools.combinations(maps, 2):
                eq = [s for s in range(x.size) if u[s] == v[s]]
                tu, tv = tensor_map(u, x, y, f), tensor_map(v, x, y, f)
                target = {z for z in range(tx.aset.size) if tu[z] == tv[z]}
                image = {tx.of(s, c) for s in eq for c in f.target.elements()}
                # E (x) B -> X (x) B: injective iff classes of E do not merge inside X (x) B
                e_size = _sub_tensor_size(x, eq, f)
                if image != target or e_size != len(image):
                    return counterexample({"limit": "equalizer", "x": x.to_json(),
                                           "y": y.to_json(), "u": list(u), "v": list(v)},
                                          bound, "equalizer not preserved")
    return verified(bound, f"{len(objs)} A-sets", work)


def _sub_tensor_size(x: FiniteASet, sub: list[int], f: MonoidHom) -> int:
    if not sub:
        return 0
    pos = {s: i for i, s in enumerate(sub)}
    act = tuple(tuple(pos[x.action[g][s]] for s in sub) for g in x.monoid.elements())
    return tensor(FiniteASet(x.monoid, len(sub), act, check=False), f).aset.size


def is_conservative_bounded(cover: Cover, bound: int, budget: int | None = None) -> Verdict:
    """Search for a non-bijective A-map that every leg turns into a bijection."""
    budget = resolve_budget(budget)
    objs = enumerate_asets(cover.base, bound)
    work = 0
    for x in objs:
        for y in objs:
            for u in aset_maps(x, y):
                work += 1
                if work > budget:
                    return partial(bound, "conservativity budget exhausted")
                if _bijective(u, y.size):
                    continue
                if all(_bijective(tensor_map(u, x, y, f), tensor(y, f).aset.size)
                       for f in cover.legs):
                    return counterexample({"x": x.to_json(), "y": y.to_json(), "map": list(u)},
                                          bound, "a non-isomorphism becomes invertible on every leg")
    return verified(bound, f"{len(objs)} A-sets", work)


# -- sheaf condition and descent -------------------------------------------


def sheaf_equalizer_check(cover: Cover, m: FiniteASet) -> Verdict:
    """Is M -> prod_i M (x) B_i => prod_ij M (x) B_ij an equalizer of sets?"""
    legs = cover.legs
    r = len(legs)
    ti = [tensor(m, f) for f in legs]
    pair = {}
    for i in range(r):
        for j in range(r):
            mon, (ei, ej) = _pushout_cached((legs[i], legs[j]))
            fij = MonoidHom(cover.base, mon, tuple(ei(legs[i](s)) for s in cover.base.elements()),
                            check=False)
            pair[(i, j)] = (tensor(m, fij), ei, ej)

    def p1(i, j, z):
        t, ei, _ = pair[(i, j)]
        s, b = ti[i].reps[z]
        return t.of(s, ei(b))

    def p2(i, j, z):
        t, _, ej = pair[(i, j)]
        s, b = ti[j].reps[z]
        return t.of(s, ej(b))

    eq = [z for z in itertools.product(*[range(t.aset.size) for t in ti])
          if all(p1(i, j, z[i]) == p2(i, j, z[j]) for i in range(r) for j in range(r))]
    unit = [b.target.unit for b in legs]
    image = [tuple(ti[i].of(s, unit[i]) for i in range(r)) for s in range(m.size)]
    if len(set(image)) != len(image):
        return counterexample({"module": m.to_json()}, None, "M -> prod M (x) B_i is not injective")
    if sorted(image) != sorted(eq):
        return counterexample({"module": m.to_json()}, None, "image is not the equalizer")
    return verified(m.size, f"equalizer has {len(eq)} elements")


def _equivariant_maps_from_tensor(tx: Tensor, target: FiniteASet, gen_points: int,
                                  budget: int) -> list[tuple[int, ...]]:
    """T-maps out of x (x) T, determined by the images of the points [s, 1]."""
    mon = tx.aset.monoid
    out = []
    total = target.size ** gen_points
    if total > budget:
        raise BudgetExceeded("maps out of a tensor product", budget, total)
    for choice in itertools.product(range(target.size), repeat=gen_points):
        img = []
        ok = True
        seen: dict[int, int] = {}
        for k, (s, c) in enumerate(tx.reps):
            img.append(target.action[c][choice[s]])
        # well defined: every pair (s, c) in class z must give the same image
        for s in range(gen_points):
            for c in mon.elements():
                z = tx.of(s, c)
                val = target.action[c][choice[s]]
                if seen.setdefault(z, val) != val:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(img))
    return out


def _lift(phi: Sequence[int], tx: Tensor, ty: Tensor, kappa: MonoidHom, tx2: Tensor,
          ty2: Tensor) -> tuple[int, ...]:
    """Base change of a T-map phi: x(x)T -> y(x)T along kappa: T -> T'."""
    tmon = kappa.target
    out = []
    for s, c in tx2.reps:
        s2, d = ty.reps[phi[tx.of(s, tx.aset.monoid.unit)]]
        out.append(ty2.of(s2, tmon.mul(kappa(d), c)))
    return tuple(out)


@dataclass(frozen=True)
class DescentReport:
    verdict: Verdict
    split: bool
    data_checked: int
    modules_checked: int

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(), "split": self.split,
                "data_checked": self.data_checked, "modules_checked": self.modules_checked}


class _DescentSetup:
    """Pushouts and structure maps needed for one cover."""

    def __init__(self, cover: Cover):
        self.cover = cover
        legs = cover.legs
        self.r = r = len(legs)
        self.pairs = {}
        for i in range(r):
            for j in range(r):
                mon, (ei, ej) = _pushout_cached((legs[i], legs[j]))
                self.pairs[(i, j)] = (mon, ei, ej)
        self.triples = {}
        for i, j, k in itertools.product(range(r), repeat=3):
            mon, (ei, ej, ek) = _pushout_cached((legs[i], legs[j], legs[k]))
            # kappa for the positions (1,2), (2,3), (1,3) of the triple
            kap = {}
            for name, (p, q), (e1, e2) in (("12", (i, j), (ei, ej)), ("23", (j, k), (ej, ek)),
                                           ("13", (i, k), (ei, ek))):
                pm = self.pairs[(p, q)][0]
                imgs = []
                for z in pm.elements():
                    b, c = self._pair_rep(p, q, z)
                    imgs.append(mon.mul(e1(b), e2(c)))
                kap[name] = MonoidHom(pm, mon, tuple(imgs), check=False)
            self.triples[(i, j, k)] = (mon, ei, ej, ek, kap)

    @lru_cache(maxsize=None)
    def _pair_rep(self, i, j, z):
        mon, ei, ej = self.pairs[(i, j)]
        for b in ei.source.elements():
            for c in ej.source.elements():
                if mon.mul(ei(b), ej(c)) == z:
                    return b, c
        raise AssertionError("pushout element without a representative")


def _datum_maps(setup: _DescentSetup, xs, i, j, budget):
    mon, ei, ej = setup.pairs[(i, j)]
    a = tensor(xs[i], ei)
    b = tensor(xs[j], ej)
    isos = [m for m in _equivariant_maps_from_tensor(a, b.aset, xs[i].size, budget)
            if _bijective(m, b.aset.size)]
    return a, b, isos


def descent_equivalence_check(cover: Cover, bound: int, budget: int | None = None) -> DescentReport:
    """Comparison functor A-Set -> Desc(cover): fully faithful and essentially surjective,
    on A-sets and descent data with at most ``bound`` points per leg."""
    budget = resolve_budget(budget)
    setup = _DescentSetup(cover)
    split = cover.is_split()
    try:
        n_mod = _check_fully_faithful(cover, setup, bound, budget)
        if isinstance(n_mod, Verdict):
            return DescentReport(n_mod, split, 0, 0)
        n_data = _check_essentially_surjective(cover, setup, bound, budget)
        if isinstance(n_data, Verdict):
            return DescentReport(n_data, split, 0, n_mod)
    except BudgetExceeded as exc:
        return DescentReport(partial(bound, str(exc)), split, 0, 0)
    note = "split cover" if split else "non-split cover"
    return DescentReport(verified(bound, f"{note}; {n_mod} module pairs, {n_data} descent data"),
                         split, n_data, n_mod)


def _check_fully_faithful(cover, setup, bound, budget):
    legs = cover.legs
    objs = enumerate_asets(cover.base, bound)
    count = 0
    for m in objs:
        for n in objs:
            count += 1
            homs_a = aset_maps(m, n)
            per_leg = []
            for f in legs:
                tm, tn = tensor(m, f), tensor(n, f)
                per_leg.append(_equivariant_maps_from_tensor(tm, tn.aset, m.size, budget))
            desc = []
            for gs in itertools.product(*per_leg):
                if _compatible_maps(setup, m, n, gs):
                    desc.append(gs)
            image = [tuple(tensor_map(u, m, n, f) for f in legs) for u in homs_a]
            if len(set(image)) != len(image) or sorted(image) != sorted(desc):
                return counterexample({"m": m.to_json(), "n": n.to_json(),
                                       "hom_A": len(homs_a), "hom_desc": len(desc)},
                                      bound, "comparison is not fully faithful")
    return count


def _compatible_maps(setup, m, n, gs) -> bool:
    legs = setup.cover.legs
    for (i, j), (mon, ei, ej) in setup.pairs.items():
        fij = MonoidHom(setup.cover.base, mon, tuple(ei(legs[i](s))
                                                     for s in setup.cover.base.elements()),
                        check=False)
        tn = tensor(n, fij)
        ti_m, ti_n = tensor(m, legs[i]), tensor(n, legs[i])
        tj_m, tj_n = tensor(m, legs[j]), tensor(n, legs[j])
        for s in range(m.size):
            a, b = ti_n.reps[gs[i][ti_m.of(s, legs[i].target.unit)]]
            c, d = tj_n.reps[gs[j][tj_m.of(s, legs[j].target.unit)]]
            if tn.of(a, ei(b)) != tn.of(c, ej(d)):
                return False
    return True


def _check_essentially_surjective(cover, setup, bound, budget):
    legs = cover.legs
    r = setup.r
    per_leg = [enumerate_asets(f.target, bound) for f in legs]
    count = 0
    for xs in itertools.product(*per_leg):
        pair_data = {}
        for i in range(r):
            for j in range(r):
                pair_data[(i, j)] = _datum_maps(setup, xs, i, j, budget)
        keys = sorted(pair_data)
        for phis in itertools.product(*[pair_data[k][2] for k in keys]):
            phi = dict(zip(keys, phis))
            if not _cocycle(setup, xs, phi, pair_data):
                continue
            count += 1
            if count > budget:
                raise BudgetExceeded("descent data", budget)
            problem = _descend_and_compare(cover, setup, xs, phi, pair_data)
            if problem:
                return counterexample({"datum": [x.to_json() for x in xs],
                                       "phi": {f"{i},{j}": list(p) for (i, j), p in
                                               sorted(phi.items())}},
                                      bound, problem)
    return count


def _cocycle(setup, xs, phi, pair_data) -> bool:
    r = setup.r
    for i, j, k in itertools.product(range(r), repeat=3):
        mon, ei, ej, ek, kap = setup.triples[(i, j, k)]
        xi, xj, xk = tensor(xs[i], ei), tensor(xs[j], ej), tensor(xs[k], ek)
        lifted = {}
        for name, (p, q), (src, dst) in (("12", (i, j), (xi, xj)), ("23", (j, k), (xj, xk)),
                                         ("13", (i, k), (xi, xk))):
            a, b, _ = pair_data[(p, q)]
            lifted[name] = _lift(phi[(p, q)], a, b, kap[name], src, dst)
        f12, f23, f13 = lifted["12"], lifted["23"], lifted["13"]
        if tuple(f23[f12[z]] for z in range(len(f12))) != f13:
            return False
    return True


def _descend_and_compare(cover, setup, xs, phi, pair_data) -> str | None:
    legs = cover.legs
    r = setup.r
    base = cover.base
    # p_*: compatible families (s_i) with phi_ij [s_i, 1] = [s_j, 1]
    fam = []
    for z in itertools.product(*[range(x.size) for x in xs]):
        ok = True
        for (i, j), (a, b, _) in pair_data.items():
            mon = a.aset.monoid
            if phi[(i, j)][a.of(z[i], mon.unit)] != b.of(z[j], mon.unit):
                ok = False
                break
        if ok:
            fam.append(z)
    index = {z: k for k, z in enumerate(fam)}
    act = []
    for s in base.elements():
        row = []
        for z in fam:
            w = tuple(xs[i].action[legs[i](s)][z[i]] for i in range(r))
            if w not in index:
                return "descended object is not closed under the action"
            row.append(index[w])
        act.append(tuple(row))
    d = FiniteASet(base, len(fam), tuple(act), check=False)
    # counit p_i^* D -> x_i must be bijective and respect phi
    counits = []
    for i, f in enumerate(legs):
        td = tensor(d, f)
        eps = tuple(xs[i].action[c][fam[k][i]] for k, c in td.reps)
        if not _bijective(eps, xs[i].size):
            return f"counit on leg {i} is not bijective"
        counits.append((td, eps))
    for (i, j), (a, b, _) in pair_data.items():
        mon, ei, ej = setup.pairs[(i, j)]
        for k in range(d.size):
            lhs = phi[(i, j)][a.of(fam[k][i], mon.unit)]
            rhs = b.of(fam[k][j], mon.unit)
            if lhs != rhs:
                return f"counit does not respect the gluing on ({i},{j})"
    return None


# -- cover discovery and pretopology -----------------------------------------


@dataclass(frozen=True)
class CoverRecord:
    cover: Cover
    flat: Verdict
    conservative: Verdict

    @property
    def faithfully_flat(self) -> bool:
        return self.flat.ok and self.conservative.ok


def is_faithfully_flat_bounded(cover: Cover, bound: int) -> bool:
    return (all(is_flat_bounded(f, bound).ok for f in cover.legs)
            and is_conservative_bounded(cover, bound).ok)


def discover_covers(max_size: int = 3, bound: int = 3, include_identity: bool = True
                    ) -> list[CoverRecord]:
    """Single-leg covers A -> B between catalogued monoids that pass both bounded checks."""
    out = []
    cat = small_monoids(max_size)
    for a in cat:
        for b in cat:
            for f in hom_enumerate(a, b):
                if not include_identity and a == b and f.images == tuple(a.elements()):
                    continue
                fl = is_flat_bounded(f, bound)
                if not fl.ok:
                    continue
                cov = Cover(a, (f,))
                co = is_conservative_bounded(cov, bound)
                if co.ok:
                    out.append(CoverRecord(cov, fl, co))
    return out


def compose_covers(first: Cover, second: dict) -> Cover:
    """{g . f_i} where ``second[i]`` is a cover of the i-th target (missing: keep f_i)."""
    legs = []
    for i, f in enumerate(first.legs):
        if i in second:
            legs += [f.then(g) for g in second[i].legs]
        else:
            legs.append(f)
    return Cover(first.base, tuple(legs))


def base_change_cover(cover: Cover, h: MonoidHom) -> Cover:
    """Pull a cover of A back along h: A -> A'."""
    legs = []
    for f in cover.legs:
        mon, (e_h, _) = _pushout_cached((h, f))
        legs.append(e_h)
    return Cover(h.target, tuple(legs))


def pretopology_check(covers: Sequence[Cover], bound: int, max_size: int = 3) -> Verdict:
    """Composites and base changes of the given covers are again faithfully flat (bounded)."""
    checked = 0
    for c1 in covers:
        for i, f in enumerate(c1.legs):
            for c2 in covers:
                if c2.base != f.target:
                    continue
                checked += 1
                comp = compose_covers(c1, {i: c2})
                if not is_faithfully_flat_bounded(comp, bound):
                    return counterexample({"first": c1.to_json(), "second": c2.to_json()},
                                          bound, "composite cover fails")
    for c in covers:
        for target in small_monoids(max_size):
            for h in hom_enumerate(c.base, target):
                checked += 1
                bc = base_change_cover(c, h)
                if not is_faithfully_flat_bounded(bc, bound):
                    return counterexample({"cover": c.to_json(), "along": list(h.images),
                                           "target": target.to_json()},
                                          bound, "base-changed cover fails")
    return verified(bound, f"{checked} composites and base changes", checked)
