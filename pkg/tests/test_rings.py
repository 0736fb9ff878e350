import pytest
from hypothesis import given, settings, strategies as st

from f1schemes.errors import InputError, UnsupportedError
from f1schemes.rings import boolean_semiring, finite_field, integers_mod, named_semiring

SEMIRINGS = [finite_field(q) for q in (2, 3, 4, 5, 7, 8, 9)] + [
    integers_mod(n) for n in (4, 6)] + [boolean_semiring()]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SEMIRINGS), st.data())
def test_semiring_laws(r, data):
    el = st.integers(0, r.size - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    add, mul = r.add, r.mul
    assert add[add[x][y]][z] == add[x][add[y][z]]
    assert mul[mul[x][y]][z] == mul[x][mul[y][z]]
    assert mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]]
    assert add[x][r.zero] == x and mul[x][r.one] == x and mul[x][r.zero] == r.zero


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_fields_have_q_minus_one_units(q):
    f = finite_field(q)
    assert f.size == q
    assert len(f.unit_indices) == q - 1
    assert f.is_ring and f.is_local
    # the unit group is cyclic: some element has order q - 1
    m = f.multiplicative_monoid()
    orders = []
    for u in f.unit_indices:
        k, x = 1, u
        while x != f.one:
            x, k = m.mul(x, u), k + 1
        orders.append(k)
    assert max(orders) == q - 1


def test_characteristic():
    assert finite_field(9).from_int(3) == finite_field(9).zero
    assert finite_field(8).from_int(2) == finite_field(8).zero


def test_locality():
    assert boolean_semiring().is_local
    assert not boolean_semiring().is_ring
    assert integers_mod(4).is_local
    assert not integers_mod(6).is_local


def test_negation_and_unsupported():
    z5 = integers_mod(5)
    assert z5.add[z5.neg(2)][2] == z5.zero
    assert z5.from_int(-1) == 4
    with pytest.raises(UnsupportedError):
        boolean_semiring().from_int(-1)


def test_named_semirings():
    assert named_semiring("B").size == 2
    assert named_semiring("Fq:4").size == 4
    assert named_semiring("Z/6").size == 6
    with pytest.raises(InputError):
        named_semiring("Fq:6")
    with pytest.raises(InputError):
        named_semiring("R")
