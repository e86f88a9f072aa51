"""Angle parameterizations of the Hurwitz maps (binary64).

* Cayley-Klein angles on R^4, mapped onto the 2-sphere by the n = 3 maps.
* A seven-parameter family on R^8 (radius plus six angles) built from two
  SU(2) factors and a diagonal phase, mapped onto the 4-sphere by the n = 5
  left map.
* Hyperspherical coordinates on S^{n-1} and on S^{2n-3}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .ksmap import quadratic_map

__all__ = [
    "AngleSet",
    "cayley_klein",
    "cayley_klein_target",
    "su2_factors",
    "w_parameters",
    "param_r8",
    "spherical_target",
    "left_side_product",
    "right_side_product",
    "hyperspherical",
    "apply_map_float",
    "random_angle_set",
]

R4_ANGLES = ("theta", "psi", "phi")
R8_ANGLES = ("eta", "chi", "theta", "psi", "theta_p", "psi_p")


@dataclass(frozen=True)
class AngleSet:
    """Radius plus named angles in radians."""

    r: float
    angles: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.r >= 0 or not math.isfinite(self.r):
            raise ValueError(f"radius must be finite and >= 0, got {self.r}")
        for k, v in self.angles.items():
            if not math.isfinite(v):
                raise ValueError(f"angle {k} is not finite")

    def __getitem__(self, name: str) -> float:
        return self.angles.get(name, 0.0)

    def require(self, names: Sequence[str]):
        missing = [n for n in names if n not in self.angles]
        if missing:
            raise ValueError(f"missing angles: {missing}")


def random_angle_set(rng: np.random.Generator, names: Sequence[str]) -> AngleSet:
    return AngleSet(float(rng.uniform(0.1, 3.0)),
                    {k: float(rng.uniform(0, 2 * math.pi)) for k in names})


def apply_map_float(n: int, side: str, u: Sequence[float]) -> np.ndarray:
    """Evaluate an exact quadratic map at float arguments."""
    m = quadratic_map(n, side)
    u = np.asarray(u, dtype=float)
    out = []
    for comp in m.components:
        total = 0.0
        for e, c in comp.items():
            total += float(c) * float(np.prod(u ** np.asarray(e)))
        out.append(total)
    return np.array(out)


def cayley_klein(a: AngleSet) -> np.ndarray:
    """u in R^4 from (r, theta, psi, phi); |u|^2 = r."""
    a.require(R4_ANGLES)
    s = math.sqrt(a.r)
    th, psi, phi = a["theta"], a["psi"], a["phi"]
    return np.array([
        s * math.sin(th / 2) * math.cos(psi - phi),
        s * math.sin(th / 2) * math.sin(psi - phi),
        s * math.cos(th / 2) * math.cos(psi + phi),
        s * math.cos(th / 2) * math.sin(psi + phi),
    ])


def cayley_klein_target(a: AngleSet, side: str) -> np.ndarray:
    """Where the n = 3 map sends cayley_klein(a): a point of radius r with x_3 = -r cos(theta).

    The left map has azimuth 2*phi, the right map azimuth 2*psi + pi.
    """
    r, th = a.r, a["theta"]
    az = 2 * a["phi"] if side == "left" else 2 * a["psi"] + math.pi
    return np.array([r * math.sin(th) * math.cos(az), r * math.sin(th) * math.sin(az), -r * math.cos(th)])


def _su2(a: complex, b: complex) -> np.ndarray:
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def su2_factors(a: AngleSet, *, literal: bool = False) -> dict[str, complex]:
    """t_1..t_5 of the SO(4) factorization, with phi = phi' = 0.

    By default t_5 = exp(-i chi / 2) (unimodular) and t_3, t_4 carry the
    phases exp(+i psi'/2), exp(-i psi'/2); with these choices the R^8 family
    lands on :func:`spherical_target`.  ``literal=True`` gives the literal
    factors (real t_5 = exp(-chi/2), opposite psi' phases), which do
    not.
    """
    th, psi, thp, psip, chi = a["theta"], a["psi"], a["theta_p"], a["psi_p"], a["chi"]
    sgn = -1.0 if literal else 1.0
    return {
        "t1": np.exp(-0.5j * psi) * math.cos(th / 2),
        "t2": np.exp(0.5j * psi) * math.sin(th / 2),
        "t3": np.exp(0.5j * sgn * psip) * math.cos(thp / 2),
        "t4": np.exp(-0.5j * sgn * psip) * math.sin(thp / 2),
        "t5": complex(math.exp(-0.5 * chi)) if literal else np.exp(-0.5j * chi),
    }


def w_parameters(a: AngleSet, *, literal: bool = False) -> tuple[complex, complex, complex, complex]:
    """(w_1, w_2, w_3, w_4): first rows of T12 diag(t5, conj t5) T34 and T12 diag(conj t5, t5) T34."""
    t = su2_factors(a, literal=literal)
    T12 = _su2(t["t1"], t["t2"])
    T34 = _su2(t["t3"], t["t4"])
    t5 = t["t5"]
    W12 = T12 @ np.diag([t5, np.conj(t5)]) @ T34
    W34 = T12 @ np.diag([np.conj(t5), t5]) @ T34
    return W12[0, 0], W12[0, 1], W34[0, 0], W34[0, 1]


def param_r8(a: AngleSet, *, literal: bool = False) -> np.ndarray:
    """u in R^8 with z_k = u_{2k-1} + i u_{2k}; |u|^2 = r.

    z_1 = sqrt(r) cos(eta/2) (t1 t3 t5 - t2 conj(t4) conj(t5)),
    z_2 = sqrt(r) cos(eta/2) (t1 t4 t5 + t2 conj(t3) conj(t5)),
    z_3 = sqrt(r) sin(eta/2) (t1 t3 conj(t5) - t2 conj(t4) t5),
    z_4 = sqrt(r) sin(eta/2) (t1 t4 conj(t5) + t2 conj(t3) t5).
    """
    a.require(R8_ANGLES)
    t = su2_factors(a, literal=literal)
    t1, t2, t3, t4, t5 = t["t1"], t["t2"], t["t3"], t["t4"], t["t5"]
    c5 = np.conj(t5)
    s = math.sqrt(a.r)
    ce, se = math.cos(a["eta"] / 2), math.sin(a["eta"] / 2)
    z = [
        s * ce * (t1 * t3 * t5 - t2 * np.conj(t4) * c5),
        s * ce * (t1 * t4 * t5 + t2 * np.conj(t3) * c5),
        s * se * (t1 * t3 * c5 - t2 * np.conj(t4) * t5),
        s * se * (t1 * t4 * c5 + t2 * np.conj(t3) * t5),
    ]
    return np.array([p for zk in z for p in (zk.real, zk.imag)])


def spherical_target(a: AngleSet) -> np.ndarray:
    """Point of radius r on the 4-sphere with polar angle eta."""
    a.require(("eta", "chi", "theta_p", "psi_p"))
    r, eta, chi, thp, psip = a.r, a["eta"], a["chi"], a["theta_p"], a["psi_p"]
    se = math.sin(eta)
    return np.array([
        r * se * math.cos(chi),
        r * se * math.sin(chi) * math.cos(thp),
        r * se * math.sin(chi) * math.sin(thp) * math.sin(psip),
        r * se * math.sin(chi) * math.sin(thp) * math.cos(psip),
        r * math.cos(eta),
    ])


def left_side_product(w: Sequence[complex]) -> np.ndarray:
    """[[conj w1, -w2], [conj w2, w1]] @ [[w3, w4], [-conj w4, conj w3]]."""
    w1, w2, w3, w4 = w
    A = np.array([[np.conj(w1), -w2], [np.conj(w2), w1]])
    return A @ _su2(w3, w4)


def right_side_product(w: Sequence[complex]) -> np.ndarray:
    """[[w1, w2], [-conj w2, conj w1]] @ [[conj w3, -w4], [conj w4, w3]]; constructed, not checked."""
    w1, w2, w3, w4 = w
    B = np.array([[np.conj(w3), -w4], [np.conj(w4), w3]])
    return _su2(w1, w2) @ B


def _sphere_chain(angles: Sequence[float]) -> list[float]:
    """Standard coordinates on S^k from k angles theta_1..theta_k.

    x_1 = sin th_k ... sin th_1, x_2 = sin th_k ... sin th_2 cos th_1, ...,
    x_{k+1} = cos th_k.
    """
    coords = []
    for j in range(len(angles) + 1):
        if j == 0:
            coords.append(math.prod(math.sin(t) for t in angles))
        else:
            coords.append(math.prod(math.sin(t) for t in angles[j:]) * math.cos(angles[j - 1]))
    return coords


def hyperspherical(n: int, angles: Sequence[float], variant: str = "left") -> np.ndarray:
    """Coordinates on the unit sphere.

    ``left`` / ``right``: n - 1 angles -> point of S^{n-1} in R^n.
    ``double``: 2n - 3 angles (theta_1..theta_{n-1}, theta'_{n-2}..theta'_1)
    -> point of S^{2n-3} in R^{2(n-1)}; the first n - 1 coordinates are
    sin(theta_{n-1}/2) times the chain in theta_1..theta_{n-2}, the rest are
    cos(theta_{n-1}/2) times the primed chain listed in reverse.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    angles = [float(t) for t in angles]
    if variant in ("left", "right"):
        if len(angles) != n - 1:
            raise ValueError(f"{variant} variant needs {n - 1} angles, got {len(angles)}")
        return np.array(_sphere_chain(angles))
    if variant == "double":
        if len(angles) != 2 * n - 3:
            raise ValueError(f"double variant needs {2 * n - 3} angles, got {len(angles)}")
        unprimed = angles[: n - 2]
        half = angles[n - 2] / 2
        primed = list(reversed(angles[n - 1:]))
        first = [math.sin(half) * x for x in _sphere_chain(unprimed)]
        second = [math.cos(half) * x for x in reversed(_sphere_chain(primed))]
        return np.array(first + second)
    raise ValueError(f"unknown variant {variant!r}")
