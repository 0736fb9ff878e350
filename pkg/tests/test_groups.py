import itertools
from math import factorial, gcd

import pytest
from hypothesis import given, settings, strategies as st

from f1schemes.errors import BudgetExceeded, InputError
from f1schemes.groups import (count_det_units, diagonalizable, gl_order_formula, gln_f1,
                              gln_points_matrix, gm, invertible_over_N, is_permutation_matrix,
                              n_matrices_invertible_over_N)
from f1schemes.monoids import cyclic_group, free_monoid, named_monoid, trivial_monoid
from f1schemes.rings import boolean_semiring, finite_field, integers_mod
from f1schemes.schemes import validate_atlas

from oracles import brute_matrix_group, gl_order


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gln_f1_over_f1_is_symmetric_group(n):
    g = gln_f1(n).points(trivial_monoid())
    assert g.order == factorial(n)
    if n <= 3:
        assert g.check_axioms()


@pytest.mark.parametrize("n,q", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_gln_f1_over_fq_is_monomial_group(n, q):
    g = gln_f1(n).points(finite_field(q))
    assert g.order == factorial(n) * (q - 1) ** n
    assert g.check_axioms()


def test_monomial_matrices_multiply_like_points():
    f3 = finite_field(3)
    g = gln_f1(2)
    pts = g.points(f3)
    mats = gln_points_matrix(2, f3)
    for x, y in itertools.product(pts.elements, repeat=2):
        mx, my, mxy = (g.monomial_matrix(p, f3) for p in (x, y, pts.law(x, y)))
        assert mats.law(mx, my) == mxy


@pytest.mark.parametrize("n,q", [(1, 2), (1, 5), (2, 2), (2, 3), (3, 2)])
def test_matrix_groups_over_fields(n, q):
    f = finite_field(q)
    g = gln_points_matrix(n, f)
    assert g.order == gl_order_formula(n, q) == gl_order(n, q)
    if n == 2 and q <= 3:
        assert g.order == count_det_units(n, f)
        assert len(brute_matrix_group(n, f.add, f.mul, f.zero, f.one, q)) == g.order


def test_matrix_group_over_z4_and_boolean():
    z4 = integers_mod(4)
    assert gln_points_matrix(2, z4).order == count_det_units(2, z4) == 96
    b = boolean_semiring()
    pts = gln_points_matrix(2, b)
    assert pts.order == 2
    assert len(brute_matrix_group(2, b.add, b.mul, b.zero, b.one, 2)) == 2


def test_f1_model_differs_from_gl_over_z():
    assert gln_f1(2).points(finite_field(3)).order == 8
    assert gln_points_matrix(2, finite_field(3)).order == 48


def test_invertible_over_N_are_permutations():
    found = n_matrices_invertible_over_N(3, 2)
    assert len(found) == 6
    assert all(is_permutation_matrix(m) for m in found)
    assert not invertible_over_N(((1, 1), (0, 1)))
    assert invertible_over_N(((0, 1), (1, 0)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_invertible_over_N_implies_permutation(entries):
    m = (tuple(entries[:2]), tuple(entries[2:]))
    assert invertible_over_N(m) == is_permutation_matrix(m)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_mu_n_points(n, q):
    assert diagonalizable(cyclic_group(n)).points(finite_field(q)).order == gcd(n, q - 1)


def test_gm_points_and_law():
    g = gm().points(finite_field(5))
    assert g.order == 4
    assert g.check_axioms() and g.is_commutative()
    d = diagonalizable(named_monoid("Z^2")).points(finite_field(3))
    assert d.order == 4


def test_atlases_validate():
    assert validate_atlas(gm().atlas).valid
    x = gln_f1(3).atlas
    assert len(x.charts) == 6
    assert validate_atlas(x).valid


def test_guards():
    with pytest.raises(InputError):
        diagonalizable(free_monoid(1))
    with pytest.raises(InputError):
        gln_f1(0)
    with pytest.raises(InputError):
        count_det_units(2, boolean_semiring())
    with pytest.raises(BudgetExceeded):
        gln_points_matrix(3, finite_field(4), budget=1000)
