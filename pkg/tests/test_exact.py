from fractions import Fraction as F

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conecert.exact import (
    Mat,
    QSqrt2,
    complete_basis,
    det,
    inverse,
    kernel_basis,
    primitive,
    qsqrt2_det,
    rank,
    rat,
    rat_str,
    solve_linear,
    vec,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
small_rationals = st.fractions(min_value=-8, max_value=8, max_denominator=5)


def test_rat_string_roundtrip():
    assert rat("3/4") == F(3, 4)
    assert rat("-7") == F(-7)
    assert rat_str(F(3, 4)) == "3/4"
    assert rat_str(F(5, 1)) == "5"
    assert rat_str(F(-2, 6)) == "-1/3"


@given(rationals, rationals)
def test_rat_field_axioms(a, b):
    assert a + (-a) == 0
    if b != 0:
        assert (a / b) * b == a


def test_solve_identity():
    A = Mat.identity(2)
    assert solve_linear(A, vec([3, F(1, 2)])) == (F(3), F(1, 2))


def test_solve_inconsistent():
    A = Mat([[1, 1], [1, 1]])
    assert solve_linear(A, vec([1, 2])) is None


def test_solve_diagonal():
    A = Mat([[2, 0], [0, 4]])
    assert solve_linear(A, vec([1, 1])) == (F(1, 2), F(1, 4))


@given(st.lists(st.lists(small_rationals, min_size=3, max_size=3), min_size=2, max_size=4))
def test_solve_substitutes_back(rows):
    A = Mat(rows)
    b = A @ vec([1, 2, 3])
    x = solve_linear(A, b)
    assert x is not None
    assert A @ x == tuple(b)


def test_rank_identity():
    assert rank(Mat.identity(3)) == 3


@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=2, max_size=8)))
def test_rank_transpose_invariant(rows):
    A = Mat(rows)
    assert rank(A) == rank(A.transpose())


def test_kernel_of_sum_row():
    (k,) = kernel_basis(Mat([[1, 1]]))
    assert primitive(k) in ((1, -1), (-1, 1))


def test_kernel_vectors_annihilate():
    A = Mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    for k in kernel_basis(A):
        assert all(x == 0 for x in A @ k)
    assert rank(A) + len(kernel_basis(A)) == 3


def test_complete_basis():
    added = complete_basis([vec([1, 1])], 2)
    assert len(added) == 1
    assert rank(Mat([vec([1, 1])] + added)) == 2


def test_complete_basis_rejects_dependent():
    with pytest.raises(ValueError):
        complete_basis([vec([1, 1]), vec([2, 2])], 2)


def test_mat_dimension_errors():
    with pytest.raises(ValueError):
        Mat([[1, 2], [3]])
    with pytest.raises(ValueError):
        Mat([[1, 2]]) @ Mat([[1, 2]])


def test_inverse_roundtrip():
    A = Mat([[2, 1, 0], [0, 1, 0], [1, 0, 3]])
    assert A @ inverse(A) == Mat.identity(3)
    assert inverse(A) @ A == Mat.identity(3)


def test_det_matches_cofactor():
    assert det(Mat([[1, 2], [3, 4]])) == F(-2)
    assert det(Mat.identity(5)) == 1
    assert det(Mat([[1, 1], [2, 2]])) == 0


def test_primitive_scaling():
    assert primitive(vec(["2/3", "-4/3"])) == (1, -2)
    assert primitive(vec([0, 5, 10])) == (0, 1, 2)
    with pytest.raises(ValueError):
        primitive(vec([0, 0]))


# -- Q(sqrt 2) ---------------------------------------------------------------


def q2(a, b=0):
    return QSqrt2.of(a, b)


def test_qsqrt2_basic():
    s = q2(0, 1)
    assert s * s == q2(2)
    assert (q2(1, 1) * q2(1, -1)) == q2(-1)


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_qsqrt2_norm_multiplicative(a, b, c, d):
    x, y = q2(a, b), q2(c, d)
    assert (x * y).norm() == x.norm() * y.norm()


@given(small_rationals, small_rationals)
def test_qsqrt2_conjugate_product(a, b):
    x = q2(a, b)
    prod = x * x.conjugate()
    assert prod == q2(a * a - 2 * b * b)


def test_qsqrt2_division():
    x = q2(3, 2)
    y = q2(1, 1)
    assert (x / y) * y == x
    with pytest.raises(ZeroDivisionError):
        x / q2(0, 0)


def test_qsqrt2_det_examples():
    assert qsqrt2_det([[q2(0, 1)]]) == q2(0, 1)
    eye4 = [[q2(1) if i == j else q2(0) for j in range(4)] for i in range(4)]
    assert qsqrt2_det(eye4) == q2(1)
    m = [[q2(1), q2(1)], [q2(1), q2(1, 1)]]
    assert qsqrt2_det(m) == q2(0, 1)


def test_qsqrt2_det_with_pivot_swap():
    m = [[q2(0), q2(1)], [q2(1), q2(0)]]
    assert qsqrt2_det(m) == q2(-1)
