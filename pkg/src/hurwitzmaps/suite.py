"""The full verification suite behind ``verify-all``.

Each case is a named zero-argument check returning ``(passed, summary)``.
Random draws come from a per-case generator seeded by the suite seed and
the case name, so results do not depend on execution order.
"""
from __future__ import annotations

import math
import random
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .bispherical import MAX_L, cg_orthogonality_residual, verify_bispherical_product
from .exactnum import MultiPoly, variables
from .cartanweyl import (
    H8_REFERENCE_BRACKETS,
    REFERENCE_SIGN_MATRICES,
    canonical_h8,
    commutator_table,
    decompose_adjoint,
    extract_generators,
    generating_matrices,
    hatted_h5,
    ladder_relations,
    lie_closure_rank,
    literal_rule_mismatches,
    so5_generators,
)
from .cayley import (
    PARAM_COUNT,
    block_identity,
    cayley_transform,
    defining_relation_residuals,
    o3_reference_matrix,
    weyl_form,
)
from .hurwitz import build_hurwitz, clifford_factors, hurwitz_minor, norm_sq, symbolic_u
from .ksmap import MAP_DIMS, apply_map, quadratic_map
from .laplace import corrupt_map, jacobian_gram_residuals, verify_factorization, verify_suite
from .matrix import ExactMatrix
from .param import (
    R4_ANGLES,
    R8_ANGLES,
    apply_map_float,
    cayley_klein,
    cayley_klein_target,
    hyperspherical,
    left_side_product,
    param_r8,
    random_angle_set,
    spherical_target,
    w_parameters,
)

__all__ = ["CaseResult", "VerificationReport", "random_rational", "random_rational_vector",
           "case_rng", "build_cases", "run_suite"]

SIDES = ("left", "right")


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    residual_summary: str
    elapsed_ms: float

    def to_json_obj(self, with_time: bool = True) -> dict:
        out = {"name": self.name, "passed": self.passed, "residual_summary": self.residual_summary}
        if with_time:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    cases: list[CaseResult]
    seed: int
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json_obj(self, with_time: bool = True) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "version": self.version,
            "passed": self.passed,
            "cases": [c.to_json_obj(with_time) for c in self.cases],
        }

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.cases), default=0)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.residual_summary}  ({c.elapsed_ms:.0f} ms)"
            for c in self.cases
        ]
        failed = sum(not c.passed for c in self.cases)
        lines.append(f"{len(self.cases) - failed}/{len(self.cases)} cases passed (seed {self.seed})")
        return "\n".join(lines)


def case_rng(seed: int, name: str) -> random.Random:
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


def random_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 9))


def random_rational_vector(rng: random.Random, count: int, *, nonzero_first: bool = False) -> list[Fraction]:
    u = [random_rational(rng) for _ in range(count)]
    while nonzero_first and u[0] == 0:
        u[0] = random_rational(rng)
    return u


# ---------------------------------------------------------------------------
# individual checks


def check_hurwitz_orthogonality(n: int, rng: random.Random, trials: int = 100):
    u = symbolic_u(n)
    H = build_hurwitz(n, u)
    if not (H @ H.T).is_scalar_multiple_of_identity(norm_sq(u)):
        return False, "symbolic H*H^t != |u|^2 I"
    for _ in range(trials):
        v = random_rational_vector(rng, n)
        H = build_hurwitz(n, v)
        if not (H @ H.T).is_scalar_multiple_of_identity(norm_sq(v)):
            return False, f"H*H^t != |u|^2 I at u = {[str(x) for x in v]}"
    return True, f"symbolic and {trials} rational trials: residual 0"


def check_clifford(n: int):
    gammas = clifford_factors(n)
    I = ExactMatrix.identity(n)
    bad = 0
    for a, Ga in enumerate(gammas):
        for b, Gb in enumerate(gammas[a:], start=a):
            target = I.scale(-2) if a == b else ExactMatrix.zeros(n)
            if Ga @ Gb + Gb @ Ga != target:
                bad += 1
    u = symbolic_u(n)
    rebuilt = ExactMatrix.identity(n, u[0])
    for x, G in zip(u[1:], gammas):
        rebuilt = rebuilt - G.T.scale(x)
    ok = bad == 0 and rebuilt == build_hurwitz(n, u)
    pairs = len(gammas) * (len(gammas) + 1) // 2
    return ok, f"{pairs - bad}/{pairs} anticommutator pairs exact; reconstruction {'exact' if rebuilt == build_hurwitz(n, u) else 'differs'}"


def check_o3_reference():
    u = symbolic_u(4)
    O = cayley_transform(3, u).matrix
    E = o3_reference_matrix()
    same = sum(O[i, j] == E[i, j] for i in range(3) for j in range(3))
    return same == 9, f"{same}/9 reference entries reproduced"


def check_weyl(n: int):
    u = symbolic_u(PARAM_COUNT[n])
    diff = cayley_transform(n, u).matrix - weyl_form(n, u)
    return diff.is_zero(), "symbolic residual 0" if diff.is_zero() else "cayley != weyl form"


def check_block(n: int):
    rep = block_identity(n, symbolic_u(PARAM_COUNT[n]))
    return rep.passed, "symbolic residual 0" if rep.passed else "nonzero block residual"


def check_cayley_numeric(n: int, rng: random.Random, trials: int = 5):
    for _ in range(trials):
        u = random_rational_vector(rng, PARAM_COUNT[n], nonzero_first=True)
        so = cayley_transform(n, u)
        r1, r2 = defining_relation_residuals(n, u, so.matrix)
        if not (so.check_invariants() and r1.is_zero() and r2.is_zero() and so.matrix.det() == so.scale_sq ** n):
            return False, f"invariant failed at u = {[str(x) for x in u]}"
    return True, f"{trials} rational trials: O*O^t = r^2 I, det O = r^{n}, defining relations exact"


def check_ksmap_norm(n: int, side: str):
    m = quadratic_map(n, side)
    ok = m.norm_composition_residual().is_zero() and m.is_homogeneous_quadratic()
    return ok, "sum x_i^2 - |u|^4 = 0 symbolically" if ok else "norm composition fails"


def check_ksmap_cayley(n: int, side: str, rng: random.Random, trials: int = 50):
    m = quadratic_map(n, side)
    for _ in range(trials):
        u = random_rational_vector(rng, m.n_source, nonzero_first=True)
        O = cayley_transform(n, u).matrix
        ref = list(O.column(n - 1)) if side == "right" else list(O.row(n - 1))
        if apply_map(m, u) != ref:
            return False, f"map differs from Cayley {'column' if side == 'right' else 'row'} at u = {[str(x) for x in u]}"
    return True, f"{trials} rational trials: map == last {'column' if side == 'right' else 'row'} of O_{n}"


def check_laplace(n: int, side: str, seed: int):
    reports = verify_suite(n, side, max_degree=3, random_count=20, seed=seed)
    gram = jacobian_gram_residuals(quadratic_map(n, side))
    gram_ok = all(p.is_zero() for p in gram["gram"] + gram["harmonic"])
    bad = [r for r in reports if not r.passed]
    ok = not bad and gram_ok
    summary = f"{len(reports) - len(bad)}/{len(reports)} polynomials with zero residual"
    if not gram_ok:
        summary += "; Jacobian Gram identity fails"
    if bad:
        summary += f"; first failure f = {bad[0].test_poly}"
    return ok, summary


def _corrupted_report():
    x = [MultiPoly.var(v, variables("x", 3)) for v in variables("x", 3)]
    bad = corrupt_map(quadratic_map(3, "right"))
    return verify_factorization(3, "right", x[0] * x[1], qmap=bad)


def check_negative_control():
    rep = _corrupted_report()
    return not rep.passed, "corruption detected (nonzero residual)" if not rep.passed else "corruption NOT detected"


def check_injected_corruption():
    rep = _corrupted_report()
    return rep.passed, "zero residual" if rep.passed else f"nonzero residual for f = {rep.test_poly}"


def check_r4r3(side: str, rng: np.random.Generator, trials: int = 200):
    worst = norm = 0.0
    for _ in range(trials):
        a = random_angle_set(rng, R4_ANGLES)
        u = cayley_klein(a)
        norm = max(norm, abs(float(u @ u) - a.r))
        worst = max(worst, float(np.abs(apply_map_float(3, side, u) - cayley_klein_target(a, side)).max()))
    return bool(worst < 1e-10 and norm < 1e-12), f"max map residual {worst:.3g}, max |u|^2 - r {norm:.3g}"


def check_r8r5(rng: np.random.Generator, trials: int = 200):
    worst = norm = wprod = 0.0
    for _ in range(trials):
        a = random_angle_set(rng, R8_ANGLES)
        u = param_r8(a)
        norm = max(norm, abs(float(u @ u) - a.r))
        worst = max(worst, float(np.abs(apply_map_float(5, "left", u) - spherical_target(a)).max()))
        P = left_side_product(w_parameters(a))
        chi, tp = a["chi"], a["theta_p"]
        wprod = max(wprod, abs(P[0, 0] - (math.cos(chi) + 1j * math.sin(chi) * math.cos(tp))))
    ok = bool(worst < 1e-10 and norm < 1e-12 and wprod < 1e-12)
    return ok, f"max map residual {worst:.3g}, max |u|^2 - r {norm:.3g}, max w-product residual {wprod:.3g}"


def check_hyperspherical(rng: np.random.Generator, trials: int = 50):
    worst = 0.0
    for n in (3, 5, 9):
        for _ in range(trials):
            for variant, k in (("left", n - 1), ("double", 2 * n - 3)):
                x = hyperspherical(n, rng.uniform(0, 2 * math.pi, k), variant)
                worst = max(worst, abs(float(x @ x) - 1))
    return bool(worst < 1e-12), f"max |x|^2 - 1 {worst:.3g}"


def check_h8_brackets():
    gm = decompose_adjoint(canonical_h8(symbolic_u(8)), "H8^1")
    hits = 0
    for k, expected in H8_REFERENCE_BRACKETS.items():
        if k == 1:
            hits += all(gm.identity_part[i - 1] == s and gm.identity_part[i + 3] == s for s, i, _ in expected)
        else:
            hits += set(gm.brackets[k]) == {(Fraction(s), i, j) for s, i, j in expected}
    rebuilt = gm.matrix(symbolic_u(8)) == canonical_h8(symbolic_u(8))
    return hits == 8 and rebuilt, f"{hits}/8 reference brackets reproduced; rebuild {'exact' if rebuilt else 'differs'}"


def check_sign_matrices():
    ok = 0
    for M in REFERENCE_SIGN_MATRICES:
        E = ExactMatrix(M)
        ok += (E @ E.T).is_scalar_multiple_of_identity(4)
    return ok == 2, f"{ok}/2 reference sign matrices satisfy M*M^t = 4I"


def check_generator_rank(n: int):
    g = extract_generators(generating_matrices(n))
    want = n * (n - 1) // 2
    r = g.rank()
    return r == want and len(g) == want, f"{len(g)} generators, rank {r} of {want}"


def check_closure(n: int):
    g = extract_generators(generating_matrices(n))
    want = n * (n - 1) // 2
    r = lie_closure_rank(g)
    return r == want, f"closure rank {r} of {want}"


def check_so5_hatted():
    u = symbolic_u(8)
    ok = hatted_h5(u, "S") == hurwitz_minor(5, u)
    return ok, "5x5 minor rebuilt exactly from hatted generators" if ok else "hatted rebuild differs"


def check_so5_commuting():
    g = so5_generators()
    zero = sum((g[f"S{a}"].commutator(g[f"T{b}"])).is_zero() for a in "123" for b in "123")
    return zero == 9, f"{zero}/9 [S_a, T_b] vanish"


def check_so5_closure():
    table = commutator_table(so5_generators())
    open_ = [k for k, e in table.items() if not e.closed]
    return not open_, f"{len(table) - len(open_)}/{len(table)} commutators close"


def check_so5_ladder():
    rel = ladder_relations()
    corrected = [r for r in rel if "L25" not in r["ladder"]]
    alt = [r for r in rel if "L25" in r["ladder"]]
    ok = all(r["holds"] for r in corrected)
    return ok, (f"{sum(r['holds'] for r in corrected)}/{len(corrected)} ladder relations hold; "
                f"alternative V reading (L25) holds in {sum(r['holds'] for r in alt)}/{len(alt)}")


def check_literal_rule():
    rep = literal_rule_mismatches()
    return rep["corrected_rule_holds"], (
        f"literal rule mismatches {len(rep['mismatches'])}/{rep['pairs_checked']} index pairs "
        f"(best sign {rep['best_overall_sign']:+d}); corrected rule exact on all pairs"
    )


def check_bispherical(l1: int, l2: int, rng: np.random.Generator):
    rep = verify_bispherical_product(l1, l2, trials=25, rng=rng)
    return rep.passed, f"max residual {rep.max_residual:.3g}, max D unitarity residual {rep.max_unitarity_residual:.3g}"


def check_cg_orthogonality():
    worst = max(cg_orthogonality_residual(a, b) for a in range(MAX_L + 1) for b in range(MAX_L + 1))
    return bool(worst < 1e-12), f"max orthogonality residual {worst:.3g}"


# ---------------------------------------------------------------------------


def build_cases(seed: int, *, inject_corruption: bool = False) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    """Named checks in suite order."""

    def rng(name):
        return case_rng(seed, name)

    def nprng(name):
        return np.random.default_rng([seed, zlib.crc32(name.encode())])

    cases: list[tuple[str, Callable]] = []

    def add(name, fn):
        cases.append((name, fn))

    for n in (2, 4, 8, 16):
        name = f"hurwitz.orthogonality.n{n:02d}"
        add(name, lambda n=n, name=name: check_hurwitz_orthogonality(n, rng(name)))
    for n in (4, 8, 16):
        add(f"hurwitz.clifford.n{n:02d}", lambda n=n: check_clifford(n))
    add("cayley.o3-reference", check_o3_reference)
    for n in (3, 7):
        add(f"cayley.weyl.n{n}", lambda n=n: check_weyl(n))
        add(f"cayley.block.n{n}", lambda n=n: check_block(n))
    for n in (5, 9):
        name = f"cayley.numeric.n{n}"
        add(name, lambda n=n, name=name: check_cayley_numeric(n, rng(name)))
    for n in MAP_DIMS:
        for side in SIDES:
            add(f"ksmap.norm.n{n}.{side}", lambda n=n, side=side: check_ksmap_norm(n, side))
            name = f"ksmap.cayley.n{n}.{side}"
            add(name, lambda n=n, side=side, name=name: check_ksmap_cayley(n, side, rng(name)))
    for n in MAP_DIMS:
        for side in SIDES:
            add(f"laplace.n{n}.{side}", lambda n=n, side=side: check_laplace(n, side, seed))
    add("laplace.negative-control", check_negative_control)
    if inject_corruption:
        add("laplace.injected-corruption", check_injected_corruption)
    for side in SIDES:
        name = f"param.r4r3.{side}"
        add(name, lambda side=side, name=name: check_r4r3(side, nprng(name)))
    add("param.r8r5", lambda: check_r8r5(nprng("param.r8r5")))
    add("param.hyperspherical", lambda: check_hyperspherical(nprng("param.hyperspherical")))
    add("cartan.h8-brackets", check_h8_brackets)
    add("cartan.sign-matrices", check_sign_matrices)
    for n in (4, 8, 16):
        add(f"cartan.rank.n{n:02d}", lambda n=n: check_generator_rank(n))
        add(f"cartan.closure.n{n:02d}", lambda n=n: check_closure(n))
    add("so5.hatted", check_so5_hatted)
    add("so5.commuting-spins", check_so5_commuting)
    add("so5.closure", check_so5_closure)
    add("so5.ladder", check_so5_ladder)
    add("so5.literal-rule", check_literal_rule)
    for l1 in range(MAX_L + 1):
        for l2 in range(MAX_L + 1):
            name = f"bispherical.l{l1}{l2}"
            add(name, lambda l1=l1, l2=l2, name=name: check_bispherical(l1, l2, nprng(name)))
    add("bispherical.cg-orthogonality", check_cg_orthogonality)
    return cases


def run_case(name: str, fn: Callable[[], tuple[bool, str]]) -> CaseResult:
    start = time.perf_counter()
    try:
        passed, summary = fn()
    except Exception as exc:  # a crashing check is a failed case, not a crashed suite
        passed, summary = False, f"{type(exc).__name__}: {exc}"
    return CaseResult(name, bool(passed), summary, (time.perf_counter() - start) * 1000)


def run_suite(seed: int = 0, *, inject_corruption: bool = False, only: str | None = None) -> VerificationReport:
    """Run every case (or those whose name starts with ``only``) and sort the results by name."""
    results = [
        run_case(name, fn)
        for name, fn in build_cases(seed, inject_corruption=inject_corruption)
        if only is None or name.startswith(only)
    ]
    return VerificationReport("verify-all", sorted(results, key=lambda c: c.name), seed)
