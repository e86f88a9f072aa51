"""Exact check of the Laplacian factorization along the quadratic Hurwitz maps.

For x = x(u) one of the maps R^N -> R^n (N = 2(n-1), n in {2, 3, 5, 9}) and
any polynomial f on R^n,

    Lap_u (f o x) = 4 |u|^2 (Lap_x f) o x,

so harmonic polynomials pull back to harmonic polynomials.  Everything here
is exact polynomial arithmetic; a report's ``passed`` flag means the
residual polynomial is identically zero.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .exactnum import MultiPoly, Var, linear_combination, poly_partial, variables
from .hurwitz import norm_sq
from .ksmap import MAP_DIMS, QuadraticMap, quadratic_map
from .matrix import nullspace

__all__ = [
    "LaplaceReport",
    "laplacian",
    "Pullback",
    "verify_factorization",
    "harmonic_monomial_suite",
    "random_polynomials",
    "jacobian_gram_residuals",
    "corrupt_map",
    "verify_suite",
]

MAX_DEGREE = 3


@dataclass(frozen=True)
class LaplaceReport:
    n: int
    side: str
    test_poly: MultiPoly
    lhs: MultiPoly
    rhs: MultiPoly
    residual: MultiPoly
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", self.residual.is_zero())

    def to_json_obj(self) -> dict:
        out = {
            "n": self.n,
            "side": self.side,
            "test_poly": str(self.test_poly),
            "passed": self.passed,
            "lhs_terms": len(self.lhs),
            "rhs_terms": len(self.rhs),
        }
        if not self.passed:
            out["residual"] = str(self.residual)
        return out


def laplacian(p: MultiPoly, vars: Sequence[Var] | None = None) -> MultiPoly:
    """Sum of unmixed second partials of ``p`` over ``vars`` (default: all its variables)."""
    if vars is None:
        idx = range(len(p.variables))
    else:
        idx = [p.position(v) for v in vars]
    out: dict = {}
    for e, c in p.items():
        for i in idx:
            k = e[i]
            if k >= 2:
                ne = e[:i] + (k - 2,) + e[i + 1:]
                s = out.get(ne, 0) + c * (k * (k - 1))
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
    return MultiPoly(p.variables, out, _trusted=True)


class Pullback:
    """Composition with a fixed quadratic map, caching the pullback of every monomial seen."""

    def __init__(self, m: QuadraticMap):
        self.map = m
        self.uvars = m.variables
        self.xvars = variables("x", m.n_target)
        zero = (0,) * m.n_target
        self._cache: dict[tuple, MultiPoly] = {zero: MultiPoly.const(1, self.uvars)}

    def monomial(self, e: tuple) -> MultiPoly:
        hit = self._cache.get(e)
        if hit is not None:
            return hit
        i = next(k for k, v in enumerate(e) if v)
        lower = e[:i] + (e[i] - 1,) + e[i + 1:]
        result = self.monomial(lower) * self.map.components[i]
        self._cache[e] = result
        return result

    def __call__(self, f: MultiPoly) -> MultiPoly:
        f = f.embed(self.xvars)
        items = list(f.items())
        return linear_combination(
            [c for _, c in items], [self.monomial(e) for e, _ in items], self.uvars
        )


_PULLBACKS: dict[tuple[int, str], Pullback] = {}


def _pullback_for(m: QuadraticMap) -> Pullback:
    key = (m.n_target, m.side)
    if m is quadratic_map(m.n_target, m.side):
        if key not in _PULLBACKS:
            _PULLBACKS[key] = Pullback(m)
        return _PULLBACKS[key]
    return Pullback(m)


def verify_factorization(n: int, side: str, f: MultiPoly, qmap: QuadraticMap | None = None) -> LaplaceReport:
    """Compare Lap_u(f o x) with 4|u|^2 (Lap_x f) o x exactly.

    ``qmap`` overrides the map (used for negative controls); by default the
    canonical map for ``(n, side)`` is used.
    """
    m = qmap if qmap is not None else quadratic_map(n, side)
    pb = _pullback_for(m)
    f = f.embed(pb.xvars)
    lhs = laplacian(pb(f))
    u = [MultiPoly.var(v, pb.uvars) for v in pb.uvars]
    rhs = pb(laplacian(f)) * norm_sq(u).scale(4)
    return LaplaceReport(n, side, f, lhs, rhs, lhs - rhs)


def _monomials(n: int, degree: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def harmonic_monomial_suite(n: int, max_degree: int) -> list[MultiPoly]:
    """Basis of harmonic polynomials in x_1..x_n of degrees 1..max_degree (degree <= 3)."""
    if max_degree > MAX_DEGREE:
        raise ValueError(f"degree {max_degree} exceeds the supported maximum (max {MAX_DEGREE})")
    xv = variables("x", n)
    x = [MultiPoly.var(v, xv) for v in xv]
    suite: list[MultiPoly] = []
    if max_degree >= 1:
        suite.extend(x)
    if max_degree >= 2:
        suite.extend(x[i] * x[j] for i, j in combinations(range(n), 2))
        suite.extend(x[0] * x[0] - x[j] * x[j] for j in range(1, n))
    if max_degree >= 3:
        cubic = _monomials(n, 3)
        linear = _monomials(n, 1)
        lin_index = {e: i for i, e in enumerate(linear)}
        # Laplacian as a matrix from cubic monomials to linear monomials.
        cols = []
        for e in cubic:
            col = [Fraction(0)] * len(linear)
            for le, c in laplacian(MultiPoly(xv, {e: 1})).items():
                col[lin_index[le]] += c
            cols.append(col)
        lap = [list(r) for r in zip(*cols)]
        for vec in nullspace(lap):
            suite.append(MultiPoly(xv, {e: c for e, c in zip(cubic, vec) if c}))
    return suite


def random_polynomials(n: int, count: int, max_degree: int = 3, *, rng: random.Random | None = None,
                       max_terms: int = 6) -> list[MultiPoly]:
    """Random non-harmonic polynomials of degree <= max_degree with small integer coefficients."""
    rng = rng or random.Random(0)
    xv = variables("x", n)
    pool = [e for d in range(max_degree + 1) for e in _monomials(n, d)]
    out = []
    while len(out) < count:
        k = rng.randint(1, max_terms)
        terms = {e: rng.choice([-3, -2, -1, 1, 2, 3]) for e in rng.sample(pool, k)}
        p = MultiPoly(xv, terms)
        if not laplacian(p).is_zero():
            out.append(p)
    return out


def jacobian_gram_residuals(m: QuadraticMap) -> dict[str, list]:
    """Residuals of the two first-order identities behind the factorization.

    ``gram``: sum_i (dx_k/du_i)(dx_l/du_i) - 4|u|^2 delta_kl for all k <= l.
    ``harmonic``: Lap_u x_k for every component.
    """
    uv = m.variables
    u = [MultiPoly.var(v, uv) for v in uv]
    r4 = norm_sq(u).scale(4)
    grads = [[poly_partial(c, v) for v in uv] for c in m.components]
    gram = []
    for k in range(m.n_target):
        for l in range(k, m.n_target):
            s = MultiPoly.zero(uv)
            for a, b in zip(grads[k], grads[l]):
                if a and b:
                    s = s + a * b
            if k == l:
                s = s - r4
            gram.append(s)
    harmonic = [laplacian(c) for c in m.components]
    return {"gram": gram, "harmonic": harmonic}


def corrupt_map(m: QuadraticMap, component: int = 0, term: int = 0) -> QuadraticMap:
    """Copy of ``m`` with the sign of one term of one component flipped."""
    comp = m.components[component]
    keys = sorted(comp.terms, reverse=True)
    terms = comp.terms
    terms[keys[term]] = -terms[keys[term]]
    comps = list(m.components)
    comps[component] = MultiPoly(comp.variables, terms)
    return QuadraticMap(m.n_target, m.n_source, tuple(comps), m.side)


def verify_suite(n: int, side: str, *, max_degree: int = 3, random_count: int = 20,
                 seed: int = 0) -> list[LaplaceReport]:
    """Harmonic basis up to ``max_degree`` plus ``random_count`` random non-harmonic polynomials."""
    if n not in MAP_DIMS:
        raise ValueError(f"unsupported target dimension {n}; expected one of {MAP_DIMS}")
    polys = harmonic_monomial_suite(n, max_degree)
    polys += random_polynomials(n, random_count, max_degree, rng=random.Random(seed))
    return [verify_factorization(n, side, f) for f in polys]
