"""Toric varieties over F1: one chart Spec M_sigma per maximal cone, glued along faces."""

from __future__ import annotations

from dataclasses import dataclass

from .cones import Fan, RationalCone, common_face, dual_cone, fan_validate, hilbert_basis
from .errors import F1Error, VerificationError
from .lattice import dot
from .monoids import AffineMonoid, Certificate, MonoidHom, identity_hom, localize
from .schemes import Chart, Overlap, SchemeAtlas, base_change_scheme


class InvalidFanError(F1Error):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"fan is invalid: {verdict.first_violation}")


@dataclass(frozen=True)
class ToricChart:
    cone: RationalCone
    monoid: AffineMonoid
    label: str


def chart_monoid(cone: RationalCone) -> AffineMonoid:
    """M_sigma: the lattice points of the dual cone."""
    return hilbert_basis(dual_cone(cone))


def face_inverted_set(m_sigma: AffineMonoid, tau: RationalCone) -> tuple:
    """Generators of M_sigma vanishing on tau; inverting them gives M_tau."""
    return tuple(g for g in m_sigma.gens if all(dot(g, r) == 0 for r in tau.rays))


def _subset(a: AffineMonoid, b: AffineMonoid) -> bool:
    return (all(b.contains(g) for g in a.gens)
            and all(b.contains(tuple(-x for x in a.gens[i])) for i in a.inverted))


def same_elements(a: AffineMonoid, b: AffineMonoid) -> bool:
    """Equal as subsets of the character lattice: mutual generator membership."""
    return a.dim == b.dim and _subset(a, b) and _subset(b, a)


def face_localization(m_sigma: AffineMonoid, tau: RationalCone,
                      m_tau: AffineMonoid) -> MonoidHom:
    """The inclusion M_sigma -> M_tau, certified as the localization at the face elements."""
    s = face_inverted_set(m_sigma, tau)
    loc, _ = localize(m_sigma, s)
    if not same_elements(loc, m_tau):
        raise VerificationError(
            f"M_sigma[S^-1] != M_tau for tau = {tau.to_json()}; inverted {list(s)}")
    return MonoidHom(m_sigma, m_tau, m_sigma.gens, Certificate("localization", s))


def toric_charts(fan: Fan) -> list[ToricChart]:
    return [ToricChart(c, chart_monoid(c), f"U{i}") for i, c in enumerate(fan.maximal_cones)]


def build_toric_atlas(fan: Fan, validate: bool = True) -> SchemeAtlas:
    """X_F1(fan) as an atlas over F1."""
    if validate:
        v = fan_validate(fan)
        if not v.valid:
            raise InvalidFanError(v)
    charts = toric_charts(fan)
    overlaps = {}
    swaps = {}
    face_monoids: dict[tuple, AffineMonoid] = {}
    for i, ci in enumerate(charts):
        for j, cj in enumerate(charts):
            if i == j:
                ident = identity_hom(ci.monoid)
                overlaps[(i, i)] = Overlap(ci.monoid, ident, ident)
                swaps[(i, i)] = ident
                continue
            tau = common_face(ci.cone, cj.cone)
            if tau.rays not in face_monoids:
                face_monoids[tau.rays] = chart_monoid(tau)
            m_tau = face_monoids[tau.rays]
            left = face_localization(ci.monoid, tau, m_tau)
            right = face_localization(cj.monoid, tau, m_tau)
            overlaps[(i, j)] = Overlap(m_tau, left, right)
            swaps[(i, j)] = identity_hom(m_tau)
    data = [{"cone": c.cone.to_json()} for c in charts]
    return SchemeAtlas(
        "F1", tuple(Chart(c.label, c.monoid, d) for c, d in zip(charts, data)),
        overlaps, swaps,
        "all maps are inclusions of submonoids of the character lattice")


def overlap_descriptions_agree(atlas: SchemeAtlas, i: int, j: int) -> bool:
    """Both localizations describing R_ij give the same monoid (the identity is the iso)."""
    ov = atlas.overlaps[(i, j)]
    a, _ = localize(atlas.charts[i].monoid, ov.left.certificate.inverted)
    b, _ = localize(atlas.charts[j].monoid, ov.right.certificate.inverted)
    return same_elements(a, b) and same_elements(a, ov.monoid)


def toric_base_change(fan: Fan, base: str) -> SchemeAtlas:
    return base_change_scheme(build_toric_atlas(fan), f"F1->{base}")
