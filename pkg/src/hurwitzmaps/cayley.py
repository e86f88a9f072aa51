"""Scaled Cayley transform of Hurwitz skew minors.

``O_n(u) = |u|^2 (u_1 I - S_n)(u_1 I + S_n)^{-1}`` where ``S_n`` is the
n x n Hurwitz minor with u_1 removed.  Keeping the |u|^2 factor makes every
entry a quadratic form in u whenever the transform is polynomial (n = 2, 3, 7)
and keeps all arithmetic exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import MultiPoly, symbols, to_rational
from .hurwitz import hurwitz_minor, minor_param_count, norm_sq
from .matrix import ExactMatrix, SingularMatrixError

__all__ = [
    "CAYLEY_DIMS",
    "PARAM_COUNT",
    "DegenerateParameterError",
    "NotPolynomialError",
    "ScaledOrthogonal",
    "BlockIdentityReport",
    "cayley_skew",
    "cayley_transform",
    "weyl_form",
    "block_vector",
    "block_identity",
    "defining_relation_residuals",
    "O3_REFERENCE_ENTRIES",
    "o3_reference_matrix",
]

CAYLEY_DIMS = (2, 3, 5, 7, 9)

# the scaled n = 3 transform written out entry by entry
O3_REFERENCE_ENTRIES = (
    ("u1^2 - u2^2 - u3^2 + u4^2", "-2*u2*u1 - 2*u3*u4", "-2*u3*u1 + 2*u2*u4"),
    ("2*u2*u1 - 2*u4*u3", "u1^2 - u2^2 + u3^2 - u4^2", "-2*u1*u4 - 2*u2*u3"),
    ("2*u3*u1 + 2*u2*u4", "2*u1*u4 - 2*u2*u3", "u1^2 + u2^2 - u3^2 - u4^2"),
)
PARAM_COUNT = {n: minor_param_count(n) for n in CAYLEY_DIMS}


class DegenerateParameterError(ValueError):
    pass


class NotPolynomialError(ValueError):
    """The symbolic Cayley transform has non-polynomial entries for this n."""


@dataclass(frozen=True)
class ScaledOrthogonal:
    dim: int
    matrix: ExactMatrix
    scale_sq: object  # Fraction or MultiPoly: |u|^2

    def orthonormal(self) -> ExactMatrix:
        if isinstance(self.scale_sq, MultiPoly):
            raise TypeError("orthonormal form of a symbolic matrix is a rational function")
        return self.matrix.scale(1 / self.scale_sq)

    def check_invariants(self) -> bool:
        gram = self.matrix @ self.matrix.T
        return gram.is_scalar_multiple_of_identity(self.scale_sq * self.scale_sq)


def _coerce(u: Sequence) -> list:
    return [x if isinstance(x, MultiPoly) else to_rational(x) for x in u]


def _check_n(n: int, u: Sequence, dims=CAYLEY_DIMS):
    if n not in dims:
        raise ValueError(f"unsupported dimension {n}; expected one of {dims}")
    if len(u) != PARAM_COUNT[n]:
        raise ValueError(f"n = {n} takes {PARAM_COUNT[n]} parameters, got {len(u)}")


def cayley_skew(n: int, u: Sequence) -> ExactMatrix:
    """S_n: the n x n Hurwitz minor with u_1 set to zero."""
    u = _coerce(u)
    _check_n(n, u)
    first = MultiPoly.zero(u[0].variables) if isinstance(u[0], MultiPoly) else Fraction(0)
    return hurwitz_minor(n, [first] + u[1:])


def _symbolic_inverse_numerator(S: ExactMatrix, u1: MultiPoly, omega_sq: MultiPoly):
    """Return N with (u1 I + S) N = u1 (u1^2 + w^2) I, valid when S^3 = -w^2 S."""
    n = S.dim
    S2 = S @ S
    if not (S2 @ S + S.scale(omega_sq)).is_zero():
        return None
    r = u1 * u1 + omega_sq
    N = ExactMatrix.identity(n, r) - S.scale(u1) + S2
    M = ExactMatrix.identity(n, u1) + S
    if not (M @ N).is_scalar_multiple_of_identity(u1 * r):
        raise AssertionError("inverse candidate failed its own check")
    return N


def cayley_transform(n: int, u: Sequence) -> ScaledOrthogonal:
    """Scaled Cayley transform of the Hurwitz skew minor S_n.

    Rational ``u`` goes through exact Gauss-Jordan elimination.  Symbolic
    ``u`` is supported when ``S_n^3 = -(u_2^2 + ...) S_n`` (n = 2, 3, 7): the
    inverse is then a quadratic polynomial in S_n over ``u_1 |u|^2``, checked
    by multiplication before use, and the quotient is taken by exact
    polynomial division.  Otherwise :class:`NotPolynomialError` is raised.
    """
    u = _coerce(u)
    _check_n(n, u)
    S = cayley_skew(n, u)
    r = norm_sq(u)
    u1 = u[0]
    numer = ExactMatrix.identity(n, u1) - S
    symbolic = any(isinstance(x, MultiPoly) for x in u)
    if not symbolic:
        if r == 0:
            raise DegenerateParameterError("degenerate parameter: u = 0")
        M = ExactMatrix.identity(n, u1) + S
        try:
            # O M = r numer  <=>  M^t O^t = r numer^t
            Ot = M.T.solve(numer.T.scale(r))
        except SingularMatrixError as exc:
            raise SingularMatrixError(
                f"u_1 I + S_{n} is singular at this parameter (u_1 = 0 with odd n)"
            ) from exc
        return ScaledOrthogonal(n, Ot.T, r)

    vars = next(x.variables for x in u if isinstance(x, MultiPoly))
    u = [x if isinstance(x, MultiPoly) else MultiPoly.const(x, vars) for x in u]
    u1 = u[0]
    omega_sq = norm_sq(u[1:])
    N = _symbolic_inverse_numerator(S, u1, omega_sq)
    if N is None:
        raise NotPolynomialError(
            f"the scaled Cayley transform for n = {n} is not polynomial in u; "
            "evaluate at rational u instead"
        )
    denom = u1 * r  # N / denom is the inverse
    prod = (ExactMatrix.identity(n, u1) - S) @ N
    O = prod.map(lambda x: (x * r).exact_divide(denom))
    return ScaledOrthogonal(n, O, r)


def o3_reference_matrix() -> ExactMatrix:
    """O3_REFERENCE_ENTRIES parsed into a symbolic matrix in u1..u4."""
    vars = symbols("u", 4)[0].variables
    return ExactMatrix([[MultiPoly.parse(e, vars) for e in row] for row in O3_REFERENCE_ENTRIES])


def weyl_form(n: int, u: Sequence) -> ExactMatrix:
    """``|u|^2 I - 2 u_1 S_n + 2 S_n^2`` for n in {3, 7}."""
    if n not in (3, 7):
        raise ValueError(f"weyl_form is defined for n in (3, 7), got {n}")
    u = _coerce(u)
    _check_n(n, u)
    S = cayley_skew(n, u)
    return ExactMatrix.identity(n, norm_sq(u)) - S.scale(2 * u[0]) + (S @ S).scale(2)


def block_vector(n: int, u: Sequence) -> list:
    """The border row V_n: (u4, -u3, u2) for n = 3, (u8, u7, -u6, -u5, u4, u3, -u2) for n = 7."""
    u = _coerce(u)
    if n == 3:
        return [u[3], -u[2], u[1]]
    if n == 7:
        return [u[7], u[6], -u[5], -u[4], u[3], u[2], -u[1]]
    raise ValueError(f"block vector defined for n in (3, 7), got {n}")


@dataclass(frozen=True)
class BlockIdentityReport:
    n: int
    product: ExactMatrix
    expected: ExactMatrix
    residual: ExactMatrix
    passed: bool


def block_identity(n: int, u: Sequence) -> BlockIdentityReport:
    """Multiply [[H^t, V^t], [-V, u1]] by [[H^t, -V^t], [V, u1]] and compare with diag(O_n, |u|^2)."""
    u = _coerce(u)
    _check_n(n, u, (3, 7))
    Ht = hurwitz_minor(n, u).T
    V = block_vector(n, u)
    zero = MultiPoly.zero(u[0].variables) if isinstance(u[0], MultiPoly) else Fraction(0)
    left = ExactMatrix.from_blocks(
        [[Ht.rows, [[v] for v in V]], [[[-v for v in V]], [[u[0]]]]]
    )
    right = ExactMatrix.from_blocks(
        [[Ht.rows, [[-v] for v in V]], [[V], [[u[0]]]]]
    )
    product = left @ right
    O = cayley_transform(n, u).matrix
    expected = ExactMatrix.from_blocks(
        [[O.rows, [[zero]] * n], [[[zero] * n], [[norm_sq(u)]]]]
    )
    residual = product - expected
    return BlockIdentityReport(n, product, expected, residual, residual.is_zero())


def defining_relation_residuals(n: int, u: Sequence, O: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Residuals of (u1 I + S) O = r (u1 I - S) and O (u1 I + S) = r (u1 I - S)."""
    u = _coerce(u)
    S = cayley_skew(n, u)
    r = norm_sq(u)
    M = ExactMatrix.identity(n, u[0]) + S
    target = (ExactMatrix.identity(n, u[0]) - S).scale(r)
    return M @ O - target, O @ M - target
