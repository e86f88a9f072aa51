import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from hurwitzmaps.exactnum import MultiPoly, symbols, variables
from hurwitzmaps.ksmap import MAP_DIMS, quadratic_map
from hurwitzmaps.laplace import (
    Pullback,
    corrupt_map,
    harmonic_monomial_suite,
    jacobian_gram_residuals,
    laplacian,
    random_polynomials,
    verify_factorization,
    verify_suite,
)

from conftest import rationals

CASES = [(n, side) for n in MAP_DIMS for side in ("left", "right")]


def test_laplacian_of_rho_difference_squared():
    u = symbols("u", 4)
    q = u[0] * u[0] + u[1] * u[1] - u[2] * u[2] - u[3] * u[3]
    r = u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3]
    assert laplacian(q * q) == r.scale(8)


def test_laplacian_subset_of_variables():
    u = symbols("u", 2)
    p = u[0] ** 2 * u[1] ** 2
    assert laplacian(p, [u[0].variables[0]]) == (u[1] ** 2).scale(2)


@pytest.mark.parametrize("n", [2, 3, 5, 9])
@pytest.mark.parametrize("degree", [1, 2, 3])
def test_harmonic_suite_dimension(n, degree):
    suite = harmonic_monomial_suite(n, degree)
    # dim of degree-d harmonics in n variables is C(n+d-1, d) - C(n+d-3, d-2)
    expected = sum(comb(n + d - 1, d) - (comb(n + d - 3, d - 2) if d >= 2 else 0) for d in range(1, degree + 1))
    assert len(suite) == expected
    assert all(laplacian(p).is_zero() for p in suite)


def test_harmonic_suite_degree_cap():
    with pytest.raises(ValueError, match="supported maximum"):
        harmonic_monomial_suite(3, 4)


def test_random_polynomials_are_not_harmonic():
    polys = random_polynomials(5, 10, 3, rng=random.Random(1))
    assert len(polys) == 10
    assert all(not laplacian(p).is_zero() for p in polys)


@pytest.mark.parametrize("n,side", CASES)
def test_suite_passes(n, side):
    reports = verify_suite(n, side, max_degree=3, random_count=20, seed=0)
    assert reports and all(r.passed for r in reports)


@pytest.mark.parametrize("n,side", CASES)
def test_first_order_identities(n, side):
    res = jacobian_gram_residuals(quadratic_map(n, side))
    assert all(p.is_zero() for p in res["gram"])
    assert all(p.is_zero() for p in res["harmonic"])


def test_norm_squared():
    # |x|^2 pulls back to |u|^4, whose Laplacian in R^4 is 24 |u|^2 = 4 |u|^2 * 6
    x = symbols("x", 3)
    u = symbols("u", 4)
    f = x[0] * x[0] + x[1] * x[1] + x[2] * x[2]
    rep = verify_factorization(3, "right", f)
    assert rep.passed
    assert rep.rhs == sum((v * v for v in u[1:]), u[0] * u[0]).scale(24)


def test_corrupted_map_is_caught():
    x = symbols("x", 3)
    bad = corrupt_map(quadratic_map(3, "right"))
    assert bad != quadratic_map(3, "right")
    rep = verify_factorization(3, "right", x[0] * x[1], qmap=bad)
    assert not rep.passed
    assert "residual" in rep.to_json_obj()


def test_report_omits_zero_residual():
    x = symbols("x", 3)
    assert "residual" not in verify_factorization(3, "left", x[0]).to_json_obj()


def test_pullback_agrees_with_direct_composition():
    m = quadratic_map(3, "left")
    pb = Pullback(m)
    x = symbols("x", 3)
    f = x[0] * x[1] - x[2] ** 2 + 3
    direct = f.compose(list(m.components))
    assert pb(f) == direct


def test_unsupported_n():
    with pytest.raises(ValueError):
        verify_suite(4, "left")


cubic = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) <= 3),
    rationals(),
    max_size=5,
).map(lambda t: MultiPoly(variables("x", 3), t))


@pytest.mark.parametrize("side", ["left", "right"])
@given(f=cubic)
def test_any_cubic_factorizes_n3(side, f):
    assert verify_factorization(3, side, f).passed


@given(f=cubic)
def test_any_cubic_factorizes_n5(f):
    assert verify_factorization(5, "left", f.embed(variables("x", 5))).passed
