"""SO(3) Wigner D matrices, Clebsch-Gordan coefficients and the bispherical product rule.

Conventions: Condon-Shortley phases, zyz Euler angles (psi, theta, phi) with
``D^l_{m,m'} = exp(-i m psi) d^l_{m,m'}(theta) exp(-i m' phi)`` and
``d^l(theta) = expm(-i theta J_y)``.  Angular momentum is capped at l = 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import expm

__all__ = [
    "MAX_L",
    "WignerIndex",
    "BisphericalReport",
    "angular_momentum",
    "small_d",
    "wigner_D_matrix",
    "wigner_D",
    "clebsch_gordan",
    "verify_bispherical_product",
    "cg_orthogonality_residual",
]

MAX_L = 2


def _check_l(*ls: int):
    for l in ls:
        if not 0 <= l <= MAX_L:
            raise ValueError(f"l = {l} is out of range (0 <= l <= {MAX_L})")


@dataclass(frozen=True)
class WignerIndex:
    l: int
    m_row: int
    m_col: int

    def __post_init__(self):
        _check_l(self.l)
        if abs(self.m_row) > self.l or abs(self.m_col) > self.l:
            raise ValueError(f"|m| must not exceed l = {self.l}")


def _m_values(l: int) -> list[int]:
    return list(range(l, -l - 1, -1))


@lru_cache(maxsize=None)
def _raising(l: int) -> np.ndarray:
    """J_+ in the basis |l, l>, |l, l-1>, ..., |l, -l>."""
    ms = _m_values(l)
    J = np.zeros((2 * l + 1, 2 * l + 1))
    for col, m in enumerate(ms[1:], start=1):
        J[col - 1, col] = math.sqrt(l * (l + 1) - m * (m + 1))
    return J


def angular_momentum(l: int) -> dict[str, np.ndarray]:
    """J_x, J_y, J_z, J_+ and J_- for spin l, built from ladder matrix elements."""
    _check_l(l)
    return _angular_momentum(l)


def _angular_momentum(l: int) -> dict[str, np.ndarray]:
    Jp = _raising(l)
    Jm = Jp.T
    return {
        "x": (Jp + Jm) / 2,
        "y": (Jp - Jm) / 2j,
        "z": np.diag(np.array(_m_values(l), dtype=float)),
        "+": Jp,
        "-": Jm,
    }


def small_d(l: int, theta: float) -> np.ndarray:
    """d^l(theta) = expm(-i theta J_y), a real orthogonal matrix."""
    _check_l(l)
    return _small_d(l, theta)


def _small_d(l: int, theta: float) -> np.ndarray:
    return expm(-1j * theta * _angular_momentum(l)["y"]).real


def wigner_D_matrix(l: int, angles: Sequence[float]) -> np.ndarray:
    """Full (2l+1) x (2l+1) D matrix, rows and columns ordered m = l, ..., -l."""
    _check_l(l)
    return _wigner_matrix(l, angles)


def _wigner_matrix(l: int, angles: Sequence[float]) -> np.ndarray:
    # coupled momenta reach l1 + l2, so the product check calls this uncapped form
    psi, theta, phi = angles
    ms = np.array(_m_values(l), dtype=float)
    return np.exp(-1j * ms * psi)[:, None] * _small_d(l, theta) * np.exp(-1j * ms * phi)[None, :]


def wigner_D(idx: WignerIndex, angles: Sequence[float]) -> complex:
    D = wigner_D_matrix(idx.l, angles)
    return complex(D[idx.l - idx.m_row, idx.l - idx.m_col])


@lru_cache(maxsize=None)
def _coupled_states(l1: int, l2: int) -> dict[tuple[int, int], np.ndarray]:
    """|l, m> as vectors in the product basis |m1> (x) |m2>, by lowering from each highest weight."""
    d1, d2 = 2 * l1 + 1, 2 * l2 + 1
    lower = np.kron(_raising(l1).T, np.eye(d2)) + np.kron(np.eye(d1), _raising(l2).T)

    def index(m1: int, m2: int) -> int:
        return (l1 - m1) * d2 + (l2 - m2)

    states: dict[tuple[int, int], np.ndarray] = {}
    for l in range(l1 + l2, abs(l1 - l2) - 1, -1):
        # top state: the m = l vector orthogonal to every |l', l> with l' > l
        basis = [index(m1, l - m1) for m1 in range(-l1, l1 + 1) if abs(l - m1) <= l2]
        v = np.zeros(d1 * d2)
        v[basis] = np.random.default_rng(0).standard_normal(len(basis)) if len(basis) > 1 else 1.0
        for lp in range(l + 1, l1 + l2 + 1):
            w = states[(lp, l)]
            v -= (w @ v) * w
        v /= np.linalg.norm(v)
        if v[index(l1, l - l1)] < 0:
            v = -v
        states[(l, l)] = v
        for m in range(l, -l, -1):
            v = lower @ v / math.sqrt(l * (l + 1) - m * (m - 1))
            states[(l, m - 1)] = v
    return states


def clebsch_gordan(l1: int, m1: int, l2: int, m2: int, l: int, m: int) -> float:
    """<l1 m1; l2 m2 | l m>; zero whenever a selection rule fails."""
    _check_l(l1, l2)
    if (abs(m1) > l1 or abs(m2) > l2 or abs(m) > l or m1 + m2 != m
            or not abs(l1 - l2) <= l <= l1 + l2):
        return 0.0
    v = _coupled_states(l1, l2)[(l, m)]
    return float(v[(l1 - m1) * (2 * l2 + 1) + (l2 - m2)])


def cg_orthogonality_residual(l1: int, l2: int) -> float:
    """max |sum_{m1,m2} <..|l m><..|l' m'> - delta| over all coupled pairs."""
    labels = [(l, m) for l in range(abs(l1 - l2), l1 + l2 + 1) for m in range(-l, l + 1)]
    worst = 0.0
    for l, m in labels:
        for lp, mp in labels:
            s = sum(
                clebsch_gordan(l1, m1, l2, m2, l, m) * clebsch_gordan(l1, m1, l2, m2, lp, mp)
                for m1 in range(-l1, l1 + 1) for m2 in range(-l2, l2 + 1)
            )
            worst = max(worst, abs(s - (1.0 if (l, m) == (lp, mp) else 0.0)))
    return worst


@dataclass(frozen=True)
class BisphericalReport:
    l1: int
    l2: int
    trials: int
    max_residual: float
    max_unitarity_residual: float

    @property
    def passed(self) -> bool:
        return self.max_residual < 1e-10 and self.max_unitarity_residual < 1e-12

    def to_json_obj(self) -> dict:
        return {
            "l1": self.l1,
            "l2": self.l2,
            "trials": self.trials,
            "max_residual": float(f"{self.max_residual:.17g}"),
            "max_unitarity_residual": float(f"{self.max_unitarity_residual:.17g}"),
            "passed": self.passed,
        }


def verify_bispherical_product(l1: int, l2: int, angles: Sequence[Sequence[float]] | None = None, *,
                               trials: int = 25, rng: np.random.Generator | None = None) -> BisphericalReport:
    """Check D^{l1}_{0,m1} D^{l2}_{m2,0} = sum_l <l1 0; l2 m2|l m2><l1 m1; l2 0|l m1> D^l_{m2,m1}.

    ``angles`` defaults to ``trials`` random (psi, theta, phi) triples.
    """
    _check_l(l1, l2)
    if angles is None:
        rng = rng or np.random.default_rng(0)
        angles = [tuple(rng.uniform(0, 2 * math.pi, 3)) for _ in range(trials)]
    worst = unit = 0.0
    ls = range(abs(l1 - l2), l1 + l2 + 1)
    for R in angles:
        D = {l: _wigner_matrix(l, R) for l in set(ls) | {l1, l2}}
        for l, M in D.items():
            unit = max(unit, float(np.abs(M @ M.conj().T - np.eye(2 * l + 1)).max()))
        for m1 in range(-l1, l1 + 1):
            for m2 in range(-l2, l2 + 1):
                lhs = D[l1][l1, l1 - m1] * D[l2][l2 - m2, l2]
                rhs = sum(
                    clebsch_gordan(l1, 0, l2, m2, l, m2) * clebsch_gordan(l1, m1, l2, 0, l, m1)
                    * D[l][l - m2, l - m1]
                    for l in ls if abs(m1) <= l and abs(m2) <= l
                )
                worst = max(worst, abs(lhs - rhs))
    return BisphericalReport(l1, l2, len(angles), worst, unit)
