"""Quadratic Hurwitz maps R^{2(n-1)} -> R^n (Levi-Civita n = 2, Kustaanheimo-Stiefel n = 3, n = 5, 9).

The right map is the last column of the scaled Cayley matrix O_n(u), the
left map its last row.  Both are built in closed form from the Hurwitz
minor ``H = H_{n-1}`` on the first half of u and the border entries
``h_{i,n}`` of ``H_n``:

    right:  (x_1..x_{n-1}) = 2 H^t (h_{n,1}, ..., h_{n,n-1})
    left:   (x_1..x_{n-1}) = 2 H   (h_{1,n}, ..., h_{n-1,n})
    both:   x_n = rho_1^2 - rho_2^2   (first-half minus second-half norm)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactnum import MultiPoly, poly_eval, to_rational
from .hurwitz import hurwitz_minor, norm_sq, symbolic_u

__all__ = ["MAP_DIMS", "QuadraticMap", "last_column_map", "last_row_map", "quadratic_map", "apply_map"]

MAP_DIMS = (2, 3, 5, 9)


@dataclass(frozen=True)
class QuadraticMap:
    n_target: int
    n_source: int
    components: tuple[MultiPoly, ...]
    side: str  # "left" | "right"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        if len(self.components) != self.n_target:
            raise ValueError("component count does not match target dimension")

    @property
    def variables(self):
        return self.components[0].variables

    def __call__(self, u: Sequence) -> list:
        return apply_map(self, u)

    def norm_composition_residual(self) -> MultiPoly:
        """sum x_i^2 - (sum u_j^2)^2 as a polynomial (zero for a genuine Hurwitz map)."""
        u = [MultiPoly.var(v, self.variables) for v in self.variables]
        r = norm_sq(u)
        return norm_sq(self.components) - r * r

    def is_homogeneous_quadratic(self) -> bool:
        return all(c.is_homogeneous(2) for c in self.components)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n_target,
            "N": self.n_source,
            "side": self.side,
            "components": [str(c) for c in self.components],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuadraticMap":
        vars = symbolic_u(obj["N"])[0].variables
        comps = tuple(MultiPoly.parse(s, vars) for s in obj["components"])
        return cls(obj["n"], obj["N"], comps, obj["side"])


@lru_cache(maxsize=None)
def quadratic_map(n: int, side: str) -> QuadraticMap:
    if n not in MAP_DIMS:
        raise ValueError(f"unsupported target dimension {n}; expected one of {MAP_DIMS}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    N = 2 * (n - 1)
    u = symbolic_u(N)
    half = N // 2
    Hn = hurwitz_minor(n, u)
    H = hurwitz_minor(n - 1, u[:half]) if n > 2 else hurwitz_minor(1, u[:1])
    if side == "right":
        border = [Hn[n - 1, j] for j in range(n - 1)]
        head = H.T.matvec(border)
    else:
        border = [Hn[i, n - 1] for i in range(n - 1)]
        head = H.matvec(border)
    head = [x.embed(u[0].variables).scale(2) for x in head]
    last = norm_sq(u[:half]) - norm_sq(u[half:])
    return QuadraticMap(n, N, tuple(head) + (last,), side)


def last_column_map(n: int) -> QuadraticMap:
    return quadratic_map(n, "right")


def last_row_map(n: int) -> QuadraticMap:
    return quadratic_map(n, "left")


def apply_map(m: QuadraticMap, u: Sequence) -> list:
    if len(u) != m.n_source:
        raise ValueError(f"map takes {m.n_source} parameters, got {len(u)}")
    vals = [to_rational(x) for x in u]
    return [poly_eval(c, vals) for c in m.components]
