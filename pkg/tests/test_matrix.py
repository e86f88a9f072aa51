from fractions import Fraction

import pytest
from hypothesis import given

from hurwitzmaps.exactnum import symbols
from hurwitzmaps.matrix import ExactMatrix, SingularMatrixError, Span, nullspace, rank

from conftest import rational_vectors


def test_identity_and_products():
    A = ExactMatrix([[1, 2], [3, 4]])
    assert A @ ExactMatrix.identity(2) == A
    assert (A @ A) == ExactMatrix([[7, 10], [15, 22]])


def test_non_square_rejected():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2]])


def test_inverse_and_det():
    A = ExactMatrix([[2, 1], [7, 4]])
    assert A.det() == 1
    assert A @ A.inverse() == ExactMatrix.identity(2)


def test_singular_solve_raises():
    with pytest.raises(SingularMatrixError):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_symbolic_entries():
    a, b = symbols("u", 2)
    M = ExactMatrix([[a, b], [-b, a]])
    assert M.is_symbolic
    assert (M @ M.T).is_scalar_multiple_of_identity(a * a + b * b)
    assert M.evaluate([1, 2]) == ExactMatrix([[1, 2], [-2, 1]])


def test_antisymmetry_predicate():
    assert ExactMatrix([[0, 1], [-1, 0]]).is_antisymmetric()
    assert not ExactMatrix([[0, 1], [1, 0]]).is_antisymmetric()


def test_json_round_trip_rational():
    A = ExactMatrix([[Fraction(1, 3), -2], [0, Fraction(5, 7)]])
    assert ExactMatrix.from_json(A.to_json()) == A
    assert A.to_json_obj()["rows"][0] == ["1/3", "-2"]


def test_json_round_trip_symbolic():
    a, b = symbols("u", 2)
    M = ExactMatrix([[a, b.scale(2)], [-b, a - b]])
    assert ExactMatrix.from_json(M.to_json()) == M


def test_rank_and_nullspace():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 0]]) == 2
    ns = nullspace([[1, 1, 0], [0, 0, 1]])
    assert len(ns) == 1
    assert ns[0][0] + ns[0][1] == 0 and ns[0][2] == 0


def test_span_coordinates():
    s = Span()
    assert s.add({0: 1, 1: 1})
    assert s.add({1: 1})
    assert not s.add({0: 2, 1: 5})
    residual, coords = s.reduce({0: 2, 1: 5})
    assert residual == {}
    assert coords == {0: 2, 1: 3}
    assert len(s) == 2


@given(rational_vectors(9))
def test_solve_recovers_rhs(v):
    A = ExactMatrix([v[0:3], v[3:6], v[6:9]])
    if A.det() == 0:
        return
    B = ExactMatrix([[1, 2, 3], [0, 1, 0], [Fraction(1, 2), 0, 1]])
    assert A @ A.solve(B) == B


@given(rational_vectors(4), rational_vectors(4))
def test_det_multiplicative(a, b):
    A = ExactMatrix([a[:2], a[2:]])
    B = ExactMatrix([b[:2], b[2:]])
    assert (A @ B).det() == A.det() * B.det()
