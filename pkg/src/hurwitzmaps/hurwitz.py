"""Hurwitz matrices H_n, their skew parts S_n and Clifford factors.

The 8x8 matrix below is the norm-composition matrix everything else is cut
from: ``H_n`` for n <= 8 is its leading n x n block, with u_1 on the
diagonal.  Entries are stored as ``(sign, parameter index)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactnum import MultiPoly, symbols, to_rational
from .matrix import ExactMatrix

__all__ = [
    "H8_TABLE",
    "SUPPORTED_DIMS",
    "HurwitzDoublingError",
    "param_vector",
    "norm_sq",
    "symbolic_u",
    "minor_param_count",
    "hurwitz_minor",
    "build_hurwitz",
    "skew_part",
    "linear_coefficients",
    "clifford_factors",
]

SUPPORTED_DIMS = (2, 4, 8, 16)

# fmt: off
H8_TABLE = (
    ((+1, 1), (+1, 2), (+1, 3), (+1, 4), (+1, 5), (+1, 6), (+1, 7), (+1, 8)),
    ((-1, 2), (+1, 1), (+1, 4), (-1, 3), (+1, 6), (-1, 5), (-1, 8), (+1, 7)),
    ((-1, 3), (-1, 4), (+1, 1), (+1, 2), (+1, 7), (+1, 8), (-1, 5), (-1, 6)),
    ((-1, 4), (+1, 3), (-1, 2), (+1, 1), (+1, 8), (-1, 7), (+1, 6), (-1, 5)),
    ((-1, 5), (-1, 6), (-1, 7), (-1, 8), (+1, 1), (+1, 2), (+1, 3), (+1, 4)),
    ((-1, 6), (+1, 5), (-1, 8), (+1, 7), (-1, 2), (+1, 1), (-1, 4), (+1, 3)),
    ((-1, 7), (+1, 8), (+1, 5), (-1, 6), (-1, 3), (+1, 4), (+1, 1), (-1, 2)),
    ((-1, 8), (-1, 7), (+1, 6), (+1, 5), (-1, 4), (-1, 3), (+1, 2), (+1, 1)),
)
# fmt: on


class HurwitzDoublingError(ValueError):
    """No candidate 16x16 doubling passes the orthogonality identity."""


def param_vector(entries: Sequence) -> list:
    """Validate and canonicalize a Hurwitz parameter vector (length 2, 4, 8 or 16)."""
    vals = [x if isinstance(x, MultiPoly) else to_rational(x) for x in entries]
    if len(vals) not in SUPPORTED_DIMS:
        raise ValueError(f"parameter vector length {len(vals)} not in {SUPPORTED_DIMS}")
    return vals


def norm_sq(u: Sequence):
    total = Fraction(0)
    for x in u:
        total = x * x + total
    return total


def symbolic_u(count: int) -> list[MultiPoly]:
    return symbols("u", count)


def minor_param_count(n: int) -> int:
    """How many leading parameters the n x n Hurwitz minor involves."""
    if n == 9:
        return 16
    if not 1 <= n <= 8:
        raise ValueError(f"no Hurwitz minor of size {n}")
    used = {idx for row in H8_TABLE[:n] for _, idx in row[:n]}
    return max(used)


def _entries_from_table(table, u: Sequence, k: int):
    return [[u[idx - 1] if s > 0 else -u[idx - 1] for s, idx in row[:k]] for row in table[:k]]


def hurwitz_minor(n: int, u: Sequence) -> ExactMatrix:
    """Leading n x n block of the Hurwitz matrix, for 1 <= n <= 9.

    For n = 9 the block is the 8x8 matrix bordered by ``u_9..u_16``: last
    column ``(u_9, ..., u_16, u_1)`` and last row ``(-u_9, ..., -u_16, u_1)``,
    the same bordering that turns H_4 into the 5x5 block of H_8.
    """
    need = minor_param_count(n)
    if len(u) != need:
        raise ValueError(f"the {n}x{n} Hurwitz minor takes {need} parameters, got {len(u)}")
    u = [x if isinstance(x, MultiPoly) else to_rational(x) for x in u]
    if n <= 8:
        return ExactMatrix(_entries_from_table(H8_TABLE, u, n))
    rows = _entries_from_table(H8_TABLE, u[:8], 8)
    border = u[8:]
    rows = [r + [b] for r, b in zip(rows, border)]
    rows.append([-b for b in border] + [u[0]])
    return ExactMatrix(rows)


def _h8(a: Sequence) -> ExactMatrix:
    return ExactMatrix(_entries_from_table(H8_TABLE, a, 8))


def _orthogonal_with_norm(H: ExactMatrix, u: Sequence) -> bool:
    return (H @ H.T).is_scalar_multiple_of_identity(norm_sq(u))


def _doubling_candidates(u: Sequence):
    """Block doublings [[A, s1*X], [s2*Y, Z]] with A = H_8(u_1..u_8) and X, Y built from u_9..u_16."""
    a, b = list(u[:8]), list(u[8:])
    A, B = _h8(a), _h8(b)
    for s1, s2, xt, yt, zt in product((1, -1), (1, -1), (False, True), (False, True), (False, True)):
        X = B.T if xt else B
        Y = B.T if yt else B
        Z = A.T if zt else A
        label = f"[[A, {s1:+d}*B{'^t' if xt else ''}], [{s2:+d}*B{'^t' if yt else ''}, A{'^t' if zt else ''}]]"
        yield label, ExactMatrix.from_blocks(
            [[A.rows, X.scale(s1).rows], [Y.scale(s2).rows, Z.rows]]
        )


def _build_h16(u: Sequence) -> ExactMatrix:
    # Screen every candidate at a fixed integer point, confirm survivors symbolically.
    probe = list(range(1, 17))
    survivors = [
        label
        for label, H in _doubling_candidates(probe)
        if _orthogonal_with_norm(H, probe)
    ]
    sym = symbolic_u(16)
    for label, H in _doubling_candidates(sym):
        if label in survivors and _orthogonal_with_norm(H, sym):
            return dict(_doubling_candidates(u))[label]
    raise HurwitzDoublingError(
        "no block doubling of H_8 satisfies H*H^t = |u|^2*I in 16 variables "
        f"({2 ** 5} candidates tried); a real 16x16 orthogonal design admits at most "
        "9 independent variables (Hurwitz-Radon number of 16)"
    )


def build_hurwitz(n: int, u: Sequence) -> ExactMatrix:
    """H_n for n in {2, 4, 8, 16}; for n = 16 the construction fails loudly."""
    if n not in SUPPORTED_DIMS:
        raise ValueError(f"unsupported Hurwitz dimension {n}; expected one of {SUPPORTED_DIMS}")
    if len(u) != n:
        raise ValueError(f"H_{n} takes {n} parameters, got {len(u)}")
    if n == 16:
        return _build_h16([x if isinstance(x, MultiPoly) else to_rational(x) for x in u])
    return hurwitz_minor(n, u)


def _zero_like(x):
    return MultiPoly.zero(x.variables) if isinstance(x, MultiPoly) else Fraction(0)


def skew_part(n: int, u: Sequence) -> ExactMatrix:
    """S_n: H_n with u_1 set to zero."""
    if len(u) == 0:
        raise ValueError("empty parameter vector")
    u0 = [_zero_like(u[0])] + list(u[1:])
    return build_hurwitz(n, u0)


def linear_coefficients(H: ExactMatrix, vars=None) -> dict:
    """Split a symbolic matrix that is linear in each variable into coefficient matrices.

    Returns ``{var: ExactMatrix}``; raises ``ValueError`` if an entry has a
    constant term or a term of degree other than one.
    """
    polys = [x for _, _, x in H.entries() if isinstance(x, MultiPoly)]
    if not polys:
        raise ValueError("matrix has no symbolic entries")
    if vars is None:
        vars = tuple(sorted({v for p in polys for v in p.variables}))
    coeffs = {v: [[Fraction(0)] * H.dim for _ in range(H.dim)] for v in vars}
    for i, j, x in H.entries():
        if not isinstance(x, MultiPoly):
            if x != 0:
                raise ValueError(f"entry ({i + 1},{j + 1}) has a constant term")
            continue
        x = x.embed(vars)
        for e, c in x.items():
            if sum(e) != 1:
                raise ValueError(
                    f"entry ({i + 1},{j + 1}) is not linear in the parameters: {x}"
                )
            coeffs[vars[e.index(1)]][i][j] = c
    return {v: ExactMatrix(m) for v, m in coeffs.items()}


def clifford_factors(n: int) -> list[ExactMatrix]:
    """[Gamma_2, ..., Gamma_n] with Gamma_i = -(coefficient of u_i in H_n)^t."""
    if n not in (4, 8, 16):
        raise ValueError(f"Clifford factors are defined for n in (4, 8, 16), got {n}")
    u = symbolic_u(n)
    coeffs = linear_coefficients(build_hurwitz(n, u), u[0].variables)
    return [-coeffs[v].T for v in u[0].variables[1:]]
