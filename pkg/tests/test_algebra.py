import pytest
from hypothesis import given, settings, strategies as st

from f1schemes.algebra import (MonoidAlgebra, algebra_map, base_change_N_to_Z, group_completion,
                               monoid_algebra, ring_homs, ring_homs_direct, same_presentation,
                               universal_property_check)
from f1schemes.cones import RationalCone, hilbert_basis
from f1schemes.errors import InputError
from f1schemes.monoids import (MonoidHom, absorbing_monoid, cyclic_group, free_group, free_monoid,
                               hom_enumerate, multiplicative_monoid, named_monoid, small_monoids)
from f1schemes.rings import boolean_semiring, finite_field, integers_mod

from oracles import minimal_ideal_group_order

TARGETS = [finite_field(2), finite_field(3), finite_field(4), integers_mod(4), boolean_semiring()]
SMALL = small_monoids(3)


def test_polynomial_arithmetic():
    a = monoid_algebra(free_monoid(1))
    t = a.monomial((1,))
    assert a.element_str(a.power(a.add(a.one, t), 2)) == "1 + 2*t1 + t1^2"
    assert a.mul(a.add(a.one, t), a.add(a.one, a.neg(t))) == a.add(a.one, a.neg(a.power(t, 2)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=4))
def test_algebra_ring_laws(x, y, z):
    a = monoid_algebra(free_monoid(1))
    ex, ey, ez = (a.element([((m,), c) for m, c in terms]) for terms in (x, y, z))
    assert a.mul(ex, a.add(ey, ez)) == a.add(a.mul(ex, ey), a.mul(ex, ez))
    assert a.mul(a.mul(ex, ey), ez) == a.mul(ex, a.mul(ey, ez))
    assert a.add(ex, a.neg(ex)) == a.zero


def test_presentations():
    assert monoid_algebra(cyclic_group(2)).pretty() == "Z[x0]/(x0^2 - 1)"
    chart = hilbert_basis(RationalCone(2, ((1, 0), (1, 2))))
    assert monoid_algebra(chart).pretty() == "Z[x0,x1,x2]/(x0*x2 - x1^2)"


def test_algebra_map_is_multiplicative():
    f = MonoidHom(free_monoid(1), free_group(1), ((2,),))
    phi = algebra_map(f)
    a = monoid_algebra(free_monoid(1))
    t = a.add(a.one, a.monomial((1,)))
    b = monoid_algebra(free_group(1))
    assert phi(a.mul(t, t)) == b.mul(phi(t), phi(t))


CATALOGUE = [
    free_monoid(1), free_monoid(2), free_group(1), free_group(2),
    cyclic_group(2), cyclic_group(3), cyclic_group(4), absorbing_monoid(),
    multiplicative_monoid(3), multiplicative_monoid(4),
    hilbert_basis(RationalCone(2, ((1, 0), (1, 2)))),
    named_monoid("N^2"),
] + list(SMALL)


@pytest.mark.parametrize("m", CATALOGUE, ids=repr)
def test_base_change_ladder(m):
    nm = monoid_algebra(m, "N")
    zm = monoid_algebra(m, "Z")
    assert same_presentation(base_change_N_to_Z(nm), zm)
    for b in TARGETS:
        direct = ring_homs_direct(zm, b)
        via = len(ring_homs(zm, b))
        raw = len(hom_enumerate(m, b.multiplicative_monoid())) if b.is_ring else 0
        assert via == raw == direct


def test_base_change_requires_N():
    with pytest.raises(InputError):
        base_change_N_to_Z(monoid_algebra(free_monoid(1), "Z"))


@pytest.mark.parametrize("m", CATALOGUE, ids=repr)
def test_group_completion_universal_property(m):
    for g in (cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(6)):
        assert universal_property_check(m, g).ok


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(small_monoids(4)))
def test_finite_completion_matches_minimal_ideal(m):
    k, h = group_completion(m)
    assert k.free_rank == 0
    assert k.order == minimal_ideal_group_order(m.table, m.unit)


def test_completion_values():
    assert group_completion(absorbing_monoid())[0].is_trivial
    assert group_completion(free_monoid(2))[0].free_rank == 2
    assert group_completion(cyclic_group(6))[0].order == 6
    chart = hilbert_basis(RationalCone(2, ((1, 0), (1, 2))))
    assert group_completion(chart)[0].free_rank == 2


def test_monoid_algebra_rejects_unknown_base():
    with pytest.raises(InputError):
        MonoidAlgebra(free_monoid(1), "Q")
