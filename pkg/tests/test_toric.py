import pytest
from hypothesis import given, settings, strategies as st

from f1schemes.cones import (CATALOGUE_FANS, Fan, catalogue_fan, cone_sum_count, dual_cone,
                             fan_validate)
from f1schemes.errors import VerificationError
from f1schemes.monoids import absorbing_monoid, trivial_monoid
from f1schemes.rings import boolean_semiring, finite_field
from f1schemes.schemes import count_points_fq, points, validate_atlas
from f1schemes.toric import (InvalidFanError, build_toric_atlas, chart_monoid, face_localization,
                             overlap_descriptions_agree, same_elements, toric_base_change,
                             toric_charts)

CLOSED_FORMS = {
    "P1": lambda q: q + 1,
    "P2": lambda q: q * q + q + 1,
    "P1xP1": lambda q: (q + 1) ** 2,
    "F1": lambda q: (q + 1) ** 2,
    "P112": lambda q: q * q + q + 1,
    "P3": lambda q: q ** 3 + q * q + q + 1,
    "A1": lambda q: q,
    "A2": lambda q: q * q,
    "A1sing": lambda q: q * q,
}


@pytest.mark.parametrize("name", sorted(CATALOGUE_FANS))
def test_every_overlap_is_a_certified_localization(name):
    fan = catalogue_fan(name)
    atlas = build_toric_atlas(fan)
    report = validate_atlas(atlas)
    assert report.valid, report.conditions
    for (i, j), ov in atlas.overlaps.items():
        assert ov.left.certificate.kind in ("localization", "identity")
        assert overlap_descriptions_agree(atlas, i, j)


@pytest.mark.parametrize("name", sorted(CATALOGUE_FANS))
def test_double_dual_on_catalogue(name):
    for c in catalogue_fan(name).cones:
        assert dual_cone(dual_cone(c)).same_as(c)


@pytest.mark.parametrize("name", sorted(CLOSED_FORMS))
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_point_counts_match_closed_forms(name, q):
    fan = catalogue_fan(name)
    glue = count_points_fq(fan, q)
    assert glue == cone_sum_count(fan, q) == CLOSED_FORMS[name](q)


@pytest.mark.parametrize("name", sorted(CATALOGUE_FANS))
def test_points_over_f1_with_zero_count_cones(name):
    # over {0, 1} each torus orbit contributes exactly one point
    fan = catalogue_fan(name)
    atlas = build_toric_atlas(fan)
    assert points(atlas, absorbing_monoid()).count == len(fan.cones)
    assert points(toric_base_change(fan, "N"), boolean_semiring()).count == len(fan.cones)
    assert points(atlas, trivial_monoid()).count == 1


def test_chart_monoids():
    charts = toric_charts(catalogue_fan("A1sing"))
    assert len(charts) == 1
    assert len(charts[0].monoid.gens) == 3


def test_face_localization_recovers_face_monoid():
    fan = catalogue_fan("P2")
    sigma = fan.maximal_cones[0]
    m_sigma = chart_monoid(sigma)
    for tau in sigma.faces():
        f = face_localization(m_sigma, tau, chart_monoid(tau))
        assert f.certificate.kind == "localization"
    with pytest.raises(VerificationError):
        face_localization(m_sigma, sigma.faces()[0], m_sigma)
    assert not same_elements(m_sigma, chart_monoid(sigma.faces()[0]))


def test_invalid_fan_refused():
    fan = Fan.from_rays(2, [(1, 0), (0, 1), (1, 1), (1, -1)], [[0, 1], [2, 3]])
    with pytest.raises(InvalidFanError):
        build_toric_atlas(fan)


def test_base_change_keeps_charts():
    fan = catalogue_fan("P1")
    z = toric_base_change(fan, "Z")
    assert z.base == "Z"
    assert [str(z.algebra(i).pretty()) for i in range(len(z.charts))] == ["Z[x0]", "Z[x0]"]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(any),
                min_size=1, max_size=3, unique=True),
       st.sampled_from([2, 3, 5]))
def test_single_cone_counts(rays, q):
    fan = Fan.from_rays(2, rays, [list(range(len(rays)))])
    if not fan_validate(fan).valid:
        return
    assert count_points_fq(fan, q) == cone_sum_count(fan, q)
    assert finite_field(q).size == q
