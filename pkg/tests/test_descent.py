import pytest
from hypothesis import given, settings, strategies as st

from f1schemes.descent import (Cover, FiniteASet, aset_maps, base_change_cover, cover_from_json,
                               descent_equivalence_check, discover_covers, enumerate_asets,
                               free_aset, identity_cover, is_conservative_bounded,
                               is_flat_bounded, pretopology_check, pushout, restrict,
                               sheaf_equalizer_check, tensor_aset, terminal_aset)
from f1schemes.errors import InputError
from f1schemes.monoids import (MonoidHom, absorbing_monoid, cyclic_group, hom_enumerate,
                               localize, small_monoids, trivial_monoid)
from f1schemes.verdicts import Status

from oracles import count_acts

SMALL = small_monoids(3)
HOMS = [f for a in SMALL for b in SMALL for f in hom_enumerate(a, b)]


@pytest.mark.parametrize("a", SMALL, ids=repr)
def test_aset_enumeration_matches_raw_search(a):
    sizes = [x.size for x in enumerate_asets(a, 3)]
    for n in range(4):
        assert sizes.count(n) == count_acts(a.table, a.unit, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(HOMS))
def test_tensor_of_free_is_free(f):
    assert tensor_aset(free_aset(f.source), f).size == f.target.size


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(HOMS), st.data())
def test_tensor_is_left_adjoint_to_restriction(f, data):
    xs = enumerate_asets(f.source, 2)
    ys = enumerate_asets(f.target, 2)
    x = data.draw(st.sampled_from(xs))
    y = data.draw(st.sampled_from(ys))
    assert len(aset_maps(tensor_aset(x, f), y)) == len(aset_maps(x, restrict(y, f)))


def test_collapse_is_flat_but_not_conservative():
    f = MonoidHom(absorbing_monoid(), trivial_monoid(), (0, 0))
    assert is_flat_bounded(f, 3).ok
    v = is_conservative_bounded(Cover(f.source, (f,)), 3)
    assert v.status == Status.COUNTEREXAMPLE


@pytest.mark.parametrize("a", small_monoids(4), ids=repr)
def test_localizations_are_flat(a):
    for s in a.elements():
        _, f = localize(a, [s])
        assert is_flat_bounded(f, 2).ok


def test_non_flat_map():
    # the point tensored up to Z/2 is the two-point free set, not the terminal one
    f = MonoidHom(trivial_monoid(), cyclic_group(2), (0,))
    assert not is_flat_bounded(f, 2).ok


def test_identity_cover_checks():
    a = absorbing_monoid()
    cov = identity_cover(a)
    assert cov.is_split()
    for m in enumerate_asets(a, 3):
        assert sheaf_equalizer_check(cov, m).ok
    rep = descent_equivalence_check(cov, 3)
    assert rep.verdict.ok


def test_discovered_covers_satisfy_descent():
    records = discover_covers(3, 3)
    assert records
    for rec in records:
        assert rec.faithfully_flat
        for m in enumerate_asets(rec.cover.base, 3):
            assert sheaf_equalizer_check(rec.cover, m).ok
        assert descent_equivalence_check(rec.cover, 3).verdict.ok


def test_two_leg_cover():
    a = cyclic_group(2)
    cov = Cover(a, (MonoidHom(a, a, (0, 1)), MonoidHom(a, a, (0, 1))))
    assert descent_equivalence_check(cov, 3).verdict.ok
    for m in enumerate_asets(a, 3):
        assert sheaf_equalizer_check(cov, m).ok


def test_pretopology_on_discovered_covers():
    covers = [r.cover for r in discover_covers(2, 2)]
    assert pretopology_check(covers, 2, 2).ok


def test_pushout_and_base_change():
    a = trivial_monoid()
    legs = (MonoidHom(a, cyclic_group(2), (0,)), MonoidHom(a, cyclic_group(3), (0,)))
    mon, embeddings = pushout(legs)
    assert mon.size == 6
    assert len(embeddings) == 2
    cov = identity_cover(a)
    bc = base_change_cover(cov, legs[0])
    assert bc.base == cyclic_group(2)
    assert bc.legs[0].target.size == 2


def test_aset_validation_and_json():
    with pytest.raises(InputError):
        FiniteASet(cyclic_group(2), 2, ((0, 1), (0, 0)))
    assert terminal_aset(cyclic_group(3)).size == 1
    cov = cover_from_json({"base": "absorbing", "legs": [{"target": "triv", "images": [0, 0]}]})
    assert not cov.is_split()
    with pytest.raises(InputError):
        cover_from_json({"base": "absorbing", "legs": [], "bonus": 1})
    with pytest.raises(InputError):
        Cover(absorbing_monoid(), ())


def test_bounded_flatness_can_be_fooled_by_small_bounds():
    # Z/4 -> Z/2 passes at bound 3; the free Z/4-set (4 points) breaks products
    a, b = cyclic_group(4), cyclic_group(2)
    f = MonoidHom(a, b, tuple(x % 2 for x in range(4)))
    assert is_flat_bounded(f, 3).status == Status.VERIFIED
    assert is_flat_bounded(f, 4).status == Status.COUNTEREXAMPLE
