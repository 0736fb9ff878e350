from fractions import Fraction

from hypothesis import given, settings, strategies as st

from f1schemes.lattice import (LatticeQuotient, determinant, integer_kernel, inverse_rational,
                               matmul, rank, smith_normal_form, snf_diagonal, solve_integer)

small = st.integers(min_value=-6, max_value=6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_snf_known_values():
    assert snf_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert snf_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert snf_diagonal([[0, 0], [0, 0]]) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_snf_factorization(m, n, data):
    a = data.draw(matrices(m, n))
    d, s, t = smith_normal_form(a, m, n)
    assert matmul(matmul(s, a), t) == d
    assert abs(determinant(s)) == 1 and abs(determinant(t)) == 1
    diag = [d[i][i] for i in range(min(m, n)) if d[i][i]]
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert len(diag) == rank(a, n)


@settings(max_examples=60, deadline=None)
@given(matrices(2, 3))
def test_kernel_vectors_are_annihilated(a):
    for v in integer_kernel(a, 3):
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
    assert len(integer_kernel(a, 3)) == 3 - rank(a, 3)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_rational_inverse(a):
    inv = inverse_rational(a)
    if determinant(a) == 0:
        assert inv is None
    else:
        ident = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        assert matmul(a, inv) == ident


def test_solve_integer_and_quotient():
    assert solve_integer([[2, 0], [0, 3]], [4, 9], 2) == (2, 3)
    assert solve_integer([[2, 0], [0, 3]], [1, 0], 2) is None
    q = LatticeQuotient([(2, 0), (0, 3)], 2)
    assert q.torsion == [6]
    assert q.free_rank == 0
    assert q.contains((4, -3)) and not q.contains((1, 0))
    assert q.key((3, 4)) == q.key((1, 1))
