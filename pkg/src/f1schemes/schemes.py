"""Schemes over F1, N or Z presented by finite affine atlases.

An atlas lists chart monoids A_i and, for each ordered pair (i, j) that
meets, an overlap R_ij with structure maps A_i -> R_ij <- A_j.  Over N or Z
the chart rings are the monoid algebras base[A_i]; the maps are induced by
the monoid maps, so the monoid data is kept throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from .algebra import MonoidAlgebra, base_change_N_to_Z
from .errors import InputError, UnsupportedError
from .monoids import (Certificate, FiniteMonoid, MonoidHom, compose, hom_enumerate,
                      identity_hom, is_epimorphism_bounded, monoid_from_json)
from .rings import FiniteSemiring
from .verdicts import Status

BASE_TAGS = ("F1", "N", "Z")
STRUCTURAL = ("identity", "isomorphism", "localization")


@dataclass(frozen=True)
class Chart:
    label: str
    monoid: Any
    data: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Overlap:
    """R_ij with ``left``: A_i -> R_ij and ``right``: A_j -> R_ij."""

    monoid: Any
    left: MonoidHom
    right: MonoidHom


@dataclass(frozen=True)
class SchemeAtlas:
    base: str
    charts: tuple[Chart, ...]
    overlaps: dict = field(default_factory=dict)
    swaps: dict = field(default_factory=dict)
    cocycle: str | None = None

    def __post_init__(self):
        if self.base not in BASE_TAGS:
            raise InputError(f"base must be one of {BASE_TAGS}")
        n = len(self.charts)
        for (i, j), ov in self.overlaps.items():
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"overlap ({i},{j}) refers to a missing chart")
            if ov.left.source != self.charts[i].monoid or ov.right.source != self.charts[j].monoid:
                raise InputError(f"overlap ({i},{j}) maps do not start at the charts")
            if ov.left.target != ov.monoid or ov.right.target != ov.monoid:
                raise InputError(f"overlap ({i},{j}) maps do not land in R_{i}{j}")

    def algebra(self, i: int) -> MonoidAlgebra | Any:
        """The chart ring (or chart monoid over F1)."""
        m = self.charts[i].monoid
        return m if self.base == "F1" else MonoidAlgebra(m, self.base)

    def to_json(self) -> dict:
        charts = []
        for i, c in enumerate(self.charts):
            entry = {"label": c.label, "monoid": c.monoid.to_json()}
            if self.base != "F1":
                entry["algebra"] = self.algebra(i).to_json()
            entry.update(c.data)
            charts.append(entry)
        overlaps = []
        for (i, j) in sorted(self.overlaps):
            ov = self.overlaps[(i, j)]
            entry = {"i": i, "j": j, "monoid": ov.monoid.to_json(),
                     "left": ov.left.to_json(), "right": ov.right.to_json()}
            if self.base != "F1":
                entry["algebra"] = MonoidAlgebra(ov.monoid, self.base).to_json()
            overlaps.append(entry)
        out = {"base": self.base, "charts": charts, "overlaps": overlaps}
        if self.cocycle:
            out["cocycle"] = self.cocycle
        return out


def affine_atlas(m, base: str = "F1", label: str = "U0") -> SchemeAtlas:
    """Spec of a single monoid (or of base[m])."""
    ident = identity_hom(m)
    return SchemeAtlas(base, (Chart(label, m),), {(0, 0): Overlap(m, ident, ident)},
                       {(0, 0): ident}, "single chart")


def disjoint_union(x: SchemeAtlas, y: SchemeAtlas) -> SchemeAtlas:
    if x.base != y.base:
        raise InputError("atlases live over different bases")
    n = len(x.charts)
    ov = dict(x.overlaps)
    sw = dict(x.swaps)
    for (i, j), o in y.overlaps.items():
        ov[(i + n, j + n)] = o
    for (i, j), s in y.swaps.items():
        sw[(i + n, j + n)] = s
    return SchemeAtlas(x.base, x.charts + y.charts, ov, sw, x.cocycle and y.cocycle)


def atlas_from_json(data: dict) -> SchemeAtlas:
    """Charts as monoid specs; overlaps as {i, j, monoid, left, right[, certificate]}."""
    unknown = set(data) - {"base", "charts", "overlaps"}
    if unknown:
        raise InputError(f"unknown atlas keys: {sorted(unknown)}")
    base = data.get("base", "F1")
    charts = tuple(Chart(c.get("label", f"U{i}"), monoid_from_json(c["monoid"]))
                   for i, c in enumerate(data["charts"]))
    overlaps = {}
    for o in data.get("overlaps", []):
        i, j = int(o["i"]), int(o["j"])
        r = monoid_from_json(o["monoid"])
        cert = o.get("certificate")
        c = Certificate(cert) if cert else None
        left = MonoidHom(charts[i].monoid, r, tuple(_tup(x) for x in o["left"]), c)
        right = MonoidHom(charts[j].monoid, r, tuple(_tup(x) for x in o["right"]), c)
        overlaps[(i, j)] = Overlap(r, left, right)
    return SchemeAtlas(base, charts, overlaps)


def _tup(x):
    return tuple(x) if isinstance(x, list) else x


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class AtlasReport:
    valid: bool
    conditions: dict

    def to_json(self) -> dict:
        return {"valid": self.valid, "conditions": self.conditions}


def _same_hom(f: MonoidHom, g: MonoidHom) -> bool:
    t = f.target
    return f.target == g.target and all(
        t.eq(a, b) for a, b in zip(f.generator_images, g.generator_images))


def validate_atlas(x: SchemeAtlas, epi_bound: int = 2) -> AtlasReport:
    """Audit the gluing relation.

    (a) every structure map is a Zariski open (structural certificate trusted,
        anything else is re-checked and counts as missing);
    (b) symmetry: R_ji is identified with R_ij, swapping the two maps;
    (c) R_ii is the diagonal;
    (d) cocycle coherence, reported as recorded by the construction.
    """
    cond: dict[str, dict] = {}
    bad = []
    for key in sorted(x.overlaps):
        ov = x.overlaps[key]
        for side, h in (("left", ov.left), ("right", ov.right)):
            if h.certificate is not None and h.certificate.kind in STRUCTURAL:
                continue
            v = is_epimorphism_bounded(h, epi_bound)
            why = ("not an epimorphism" if v.status is Status.COUNTEREXAMPLE
                   else "Zariski-open certificate missing")
            bad.append({"overlap": list(key), "map": side, "reason": why,
                        "epi_check": v.to_json()})
    cond["a"] = {"ok": not bad, "failures": bad}

    bad = []
    for (i, j), ov in sorted(x.overlaps.items()):
        other = x.overlaps.get((j, i))
        if other is None:
            bad.append({"overlap": [i, j], "reason": f"R_{j}{i} missing"})
            continue
        swap = x.swaps.get((i, j))
        if swap is None:
            if ov.monoid == other.monoid:
                swap = identity_hom(ov.monoid)
            else:
                bad.append({"overlap": [i, j], "reason": "no recorded isomorphism"})
                continue
        if not (_same_hom(compose(swap, ov.left), other.right)
                and _same_hom(compose(swap, ov.right), other.left)):
            bad.append({"overlap": [i, j], "reason": "isomorphism does not swap the maps"})
    cond["b"] = {"ok": not bad, "failures": bad}

    bad = []
    for i in range(len(x.charts)):
        ov = x.overlaps.get((i, i))
        if ov is None:
            bad.append({"chart": i, "reason": "R_ii missing"})
        elif not (_same_hom(ov.left, ov.right) and _is_iso(ov.left)):
            bad.append({"chart": i, "reason": "R_ii is not the diagonal"})
    cond["c"] = {"ok": not bad, "failures": bad}

    cond["d"] = {"ok": True, "recorded": x.cocycle or "not recorded"}
    return AtlasReport(all(c["ok"] for c in cond.values()), cond)


def _is_iso(h: MonoidHom) -> bool:
    if h.certificate is not None and h.certificate.kind in ("identity", "isomorphism"):
        return True
    if h.is_identity():
        return True
    return h.certificate is not None and h.certificate.kind == "localization" \
        and h.source == h.target


# -- points ----------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """Classes of (chart index, generator images); each class sorted, minimum first."""

    classes: tuple[tuple[tuple[int, tuple], ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> list[tuple[int, tuple]]:
        return [c[0] for c in self.classes]

    def to_json(self) -> dict:
        return {"count": self.count,
                "points": [{"chart": i, "images": list(imgs)} for i, imgs in
                           self.representatives]}


def target_monoid(x: SchemeAtlas, b) -> FiniteMonoid | None:
    """The monoid whose homs compute X(B); None if X(B) is empty for type reasons."""
    if isinstance(b, FiniteMonoid):
        if x.base != "F1":
            raise UnsupportedError(f"points of a {x.base}-scheme need a semiring target")
        return b
    if isinstance(b, FiniteSemiring):
        if not b.is_local:
            raise UnsupportedError(
                f"{b.name} is not local; X(B) is not the chart-wise quotient and is refused")
        if x.base == "Z" and not b.is_ring:
            return None
        return b.multiplicative_monoid()
    raise InputError(f"unsupported point target {b!r}")


def points(x: SchemeAtlas, b, budget: int | None = None) -> PointSet:
    """X(B) = (disjoint union of Hom(A_i, B)) / gluing, for local finite B."""
    bm = target_monoid(x, b)
    if bm is None:
        return PointSet(())
    nodes: list[tuple[int, tuple]] = []
    for i, c in enumerate(x.charts):
        nodes += [(i, h.generator_images) for h in hom_enumerate(c.monoid, bm, budget)]
    index = {n: k for k, n in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for (i, j) in sorted(x.overlaps):
        if i == j:
            continue
        ov = x.overlaps[(i, j)]
        for psi in hom_enumerate(ov.monoid, bm, budget):
            a = (i, compose(psi, ov.left).generator_images)
            b2 = (j, compose(psi, ov.right).generator_images)
            parent[find(index[a])] = find(index[b2])
    groups: dict[int, list] = {}
    for n in nodes:
        groups.setdefault(find(index[n]), []).append(n)
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    return PointSet(tuple(classes))


def count_points_fq(fan, q: int) -> int:
    """|X_Z(fan)(F_q)| by gluing chart points over the monoid (F_q, *)."""
    from .rings import finite_field
    from .toric import build_toric_atlas

    return points(build_toric_atlas(fan), finite_field(q).multiplicative_monoid()).count


def count_points_report(fan, q: int) -> dict:
    from .cones import cone_sum_count

    glue = count_points_fq(fan, q)
    oracle = cone_sum_count(fan, q)
    return {"q": q, "glue": glue, "cone_sum": oracle, "agree": glue == oracle}


# -- base change -----------------------------------------------------------


DIRECTIONS = {"F1->N": ("F1", "N"), "N->Z": ("N", "Z"), "F1->Z": ("F1", "Z")}


def base_change_scheme(x: SchemeAtlas, direction: str) -> SchemeAtlas:
    """Apply the base-change functor chart-wise and overlap-wise.

    Charts and overlaps keep their monoids; the maps keep their certificates.
    """
    try:
        src, dst = DIRECTIONS[direction.replace("→", "->")]
    except KeyError:
        raise InputError(f"unknown direction {direction!r}; use one of {sorted(DIRECTIONS)}") \
            from None
    if x.base != src:
        raise InputError(f"atlas is over {x.base}, direction starts at {src}")
    if src == "N":
        for i in range(len(x.charts)):
            base_change_N_to_Z(x.algebra(i))
    return replace(x, base=dst)
