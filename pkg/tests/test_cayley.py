from fractions import Fraction

import pytest
from hypothesis import given

from hurwitzmaps.cayley import (
    O3_REFERENCE_ENTRIES,
    PARAM_COUNT,
    DegenerateParameterError,
    NotPolynomialError,
    block_identity,
    block_vector,
    cayley_skew,
    cayley_transform,
    defining_relation_residuals,
    o3_reference_matrix,
    weyl_form,
)
from hurwitzmaps.exactnum import MultiPoly
from hurwitzmaps.hurwitz import norm_sq, symbolic_u
from hurwitzmaps.matrix import ExactMatrix, SingularMatrixError

from conftest import rational_vectors


def test_o3_reference_entries():
    O = cayley_transform(3, symbolic_u(4)).matrix
    vars = symbolic_u(4)[0].variables
    for i, row in enumerate(O3_REFERENCE_ENTRIES):
        for j, text in enumerate(row):
            assert O[i, j] == MultiPoly.parse(text, vars)


def test_n3_at_unit_vector_is_identity():
    so = cayley_transform(3, [1, 0, 0, 0])
    assert so.matrix == ExactMatrix.identity(3)
    assert so.scale_sq == 1


@pytest.mark.parametrize("n", [3, 7])
def test_weyl_form_agrees(n):
    u = symbolic_u(PARAM_COUNT[n])
    assert cayley_transform(n, u).matrix == weyl_form(n, u)


@pytest.mark.parametrize("n", [3, 7])
def test_block_identity(n):
    assert block_identity(n, symbolic_u(PARAM_COUNT[n])).passed


def test_block_vector_n3():
    assert block_vector(3, [1, 2, 3, 4]) == [4, -3, 2]


@pytest.mark.parametrize("n", [2, 3, 7])
def test_symbolic_orthogonality(n):
    so = cayley_transform(n, symbolic_u(PARAM_COUNT[n]))
    assert so.check_invariants()
    assert all(x.is_homogeneous(2) for _, _, x in so.matrix.entries() if not x.is_zero())


@pytest.mark.parametrize("n", [5, 9])
def test_not_polynomial_for_five_and_nine(n):
    with pytest.raises(NotPolynomialError):
        cayley_transform(n, symbolic_u(PARAM_COUNT[n]))


@pytest.mark.parametrize("n", [2, 3, 5, 7, 9])
@given(data=rational_vectors(16, nonzero_first=True))
def test_rational_invariants(n, data):
    u = data[: PARAM_COUNT[n]]
    so = cayley_transform(n, u)
    assert so.check_invariants()
    assert so.matrix.det() == so.scale_sq ** n
    r1, r2 = defining_relation_residuals(n, u, so.matrix)
    assert r1.is_zero() and r2.is_zero()


@given(rational_vectors(4, nonzero_first=True))
def test_orthonormal_form(u):
    Q = cayley_transform(3, u).orthonormal()
    assert Q @ Q.T == ExactMatrix.identity(3)


def test_zero_vector_rejected():
    with pytest.raises(DegenerateParameterError):
        cayley_transform(3, [0, 0, 0, 0])


def test_odd_n_singular_when_u1_vanishes():
    with pytest.raises(SingularMatrixError):
        cayley_transform(3, [0, 1, 2, 3])


def test_even_n_fine_when_u1_vanishes():
    assert cayley_transform(2, [0, 1]).check_invariants()


def test_skew_is_antisymmetric():
    assert cayley_skew(7, list(range(1, 9))).is_antisymmetric()


def test_wrong_arity():
    with pytest.raises(ValueError):
        cayley_transform(3, [1, 2, 3])
    with pytest.raises(ValueError):
        cayley_transform(4, [1, 2, 3, 4])


def test_o3_reference_matrix_helper():
    assert o3_reference_matrix() == weyl_form(3, symbolic_u(4))
