"""Acceptance criteria, one pytest case per sub-check.

A criterion passes when all of its sub-checks pass, including its runtime
budget.  The per-criterion PASS/FAIL lines are printed at the end of the
pytest run (see ``conftest.py``) and when this file is run directly:

    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import json
import subprocess
import sys
import time
from collections import defaultdict

import pytest

from hurwitzmaps import suite as S
from hurwitzmaps.bispherical import MAX_L

SEED = 0

CRITERIA = {
    1: "Hurwitz orthogonality, n in {2,4,8,16}",
    2: "Clifford relations and reconstruction, n in {4,8,16}",
    3: "Cayley/Weyl agreement, reference 3x3 transform, block identities",
    4: "Quadratic maps: norm composition and Cayley row/column agreement",
    5: "Laplacian factorization with negative control",
    6: "Angle parameterization round trips",
    7: "Cartan-Weyl generating matrices",
    8: "SO(5) generators and commutator table",
    9: "SO(3) bispherical product identity",
    10: "verify-all --seed 0: exit status, runtime, determinism",
}

BUDGET_S = {1: 5, 2: 5, 3: 10, 4: 20, 5: 120, 6: 5, 7: 30, 8: 5, 9: 5}

# criterion -> {sub-check name: (passed, summary, elapsed seconds)}
RESULTS: dict[int, dict[str, tuple[bool, str, float]]] = defaultdict(dict)


def rng(name):
    return S.case_rng(SEED, name)


def nprng(name):
    import zlib

    import numpy as np

    return np.random.default_rng([SEED, zlib.crc32(name.encode())])


def _subchecks():
    c = []
    for n in (2, 4, 8, 16):
        c.append((1, f"orthogonality n={n}", lambda n=n: S.check_hurwitz_orthogonality(n, rng(f"acc1.{n}"))))
    for n in (4, 8, 16):
        c.append((2, f"clifford n={n}", lambda n=n: S.check_clifford(n)))
    c.append((3, "reference 3x3 entries", S.check_o3_reference))
    for n in (3, 7):
        c.append((3, f"cayley == weyl n={n}", lambda n=n: S.check_weyl(n)))
        c.append((3, f"block identity n={n}", lambda n=n: S.check_block(n)))
    for n in (3, 5, 9):
        for side in S.SIDES:
            c.append((4, f"norm n={n} {side}", lambda n=n, side=side: S.check_ksmap_norm(n, side)))
            c.append((4, f"cayley agreement n={n} {side}",
                      lambda n=n, side=side: S.check_ksmap_cayley(n, side, rng(f"acc4.{n}.{side}"), 50)))
    for n in (2, 3, 5, 9):
        for side in S.SIDES:
            c.append((5, f"factorization n={n} {side}", lambda n=n, side=side: S.check_laplace(n, side, SEED)))
    c.append((5, "corrupted map detected", S.check_negative_control))
    for side in S.SIDES:
        c.append((6, f"R4->R3 {side}", lambda side=side: S.check_r4r3(side, nprng(f"acc6.{side}"), 200)))
    c.append((6, "R8->R5", lambda: S.check_r8r5(nprng("acc6.r8"), 200)))
    c.append((7, "reference brackets", S.check_h8_brackets))
    c.append((7, "reference sign matrices", S.check_sign_matrices))
    for n in (4, 8, 16):
        c.append((7, f"rank n={n}", lambda n=n: S.check_generator_rank(n)))
        c.append((7, f"closure n={n}", lambda n=n: S.check_closure(n)))
    c.append((8, "hatted 5x5 reconstruction", S.check_so5_hatted))
    c.append((8, "[S_a, T_b] = 0", S.check_so5_commuting))
    c.append((8, "table closes", S.check_so5_closure))
    for l1 in range(MAX_L + 1):
        for l2 in range(MAX_L + 1):
            c.append((9, f"product l1={l1} l2={l2}",
                      lambda l1=l1, l2=l2: S.check_bispherical(l1, l2, nprng(f"acc9.{l1}{l2}"))))
    c.append((9, "CG orthogonality", S.check_cg_orthogonality))
    return c


SUBCHECKS = _subchecks()


def _run(crit: int, name: str, fn) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        passed, summary = fn()
    except Exception as exc:
        passed, summary = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    RESULTS[crit][name] = (bool(passed), summary, elapsed)
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {crit}: {name}: {summary}")
    return bool(passed), summary


@pytest.mark.parametrize("crit,name,fn", SUBCHECKS, ids=[f"c{c:02d}-{n}" for c, n, _ in SUBCHECKS])
def test_subcheck(crit, name, fn):
    passed, summary = _run(crit, name, fn)
    assert passed, summary


@pytest.mark.parametrize("crit", sorted(BUDGET_S), ids=[f"c{c:02d}-runtime" for c in sorted(BUDGET_S)])
def test_runtime_budget(crit):
    for c, name, fn in SUBCHECKS:
        if c == crit and name not in RESULTS[crit]:
            _run(c, name, fn)
    total = sum(e for n, (_, _, e) in RESULTS[crit].items() if n != "runtime")
    ok = total < BUDGET_S[crit]
    RESULTS[crit]["runtime"] = (ok, f"{total:.2f} s (budget {BUDGET_S[crit]} s)", 0.0)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {crit}: runtime {total:.2f} s (budget {BUDGET_S[crit]} s)")
    assert ok


_VERIFY_ALL: dict = {}


def _verify_all_runs():
    if not _VERIFY_ALL:
        runs = []
        for _ in range(2):
            start = time.perf_counter()
            proc = subprocess.run([sys.executable, "-m", "hurwitzmaps", "verify-all", "--seed", str(SEED)],
                                  capture_output=True, text=True)
            runs.append((proc.returncode, json.loads(proc.stdout), time.perf_counter() - start))
        _VERIFY_ALL["runs"] = runs
    return _VERIFY_ALL["runs"]


def _check_exit():
    code, report, _ = _verify_all_runs()[0]
    failed = [c["name"] for c in report["cases"] if not c["passed"]]
    return code == 0, f"exit {code}; failing cases: {failed or 'none'}"


def _check_runtime():
    _, report, wall = _verify_all_runs()[0]
    non_laplace = sum(c["elapsed_ms"] for c in report["cases"] if not c["name"].startswith("laplace")) / 1000
    return wall < 180 and non_laplace < 60, f"total {wall:.1f} s (< 180), excluding factorization {non_laplace:.1f} s (< 60)"


def _check_determinism():
    (_, a, _), (_, b, _) = _verify_all_runs()
    strip = [[{k: v for k, v in c.items() if k != "elapsed_ms"} for c in r["cases"]] for r in (a, b)]
    same = strip[0] == strip[1] and {k: v for k, v in a.items() if k != "cases"} == {k: v for k, v in b.items() if k != "cases"}
    ordered = [c["name"] for c in a["cases"]] == sorted(c["name"] for c in a["cases"])
    return same and ordered, f"two runs identical modulo elapsed_ms: {same}; cases sorted: {ordered}"


VERIFY_ALL_CHECKS = [("exit status 0", _check_exit), ("runtime", _check_runtime), ("deterministic report", _check_determinism)]


@pytest.mark.parametrize("name,fn", VERIFY_ALL_CHECKS, ids=[f"c10-{n}" for n, _ in VERIFY_ALL_CHECKS])
def test_verify_all(name, fn):
    passed, summary = _run(10, name, fn)
    assert passed, summary


def summary_lines() -> list[str]:
    lines = []
    for crit, title in CRITERIA.items():
        subs = RESULTS.get(crit, {})
        if not subs:
            lines.append(f"criterion {crit:2d}: NOT RUN  {title}")
            continue
        failed = [n for n, (p, _, _) in subs.items() if not p]
        verdict = "PASS" if not failed else "FAIL"
        detail = f"{len(subs) - len(failed)}/{len(subs)} sub-checks"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        lines.append(f"criterion {crit:2d}: {verdict}  {title}  ({detail})")
    return lines


if __name__ == "__main__":
    for crit, name, fn in SUBCHECKS:
        _run(crit, name, fn)
    for crit in sorted(BUDGET_S):
        total = sum(e for _, _, e in RESULTS[crit].values())
        RESULTS[crit]["runtime"] = (total < BUDGET_S[crit], f"{total:.2f} s", 0.0)
    for name, fn in VERIFY_ALL_CHECKS:
        _run(10, name, fn)
    print()
    print("\n".join(summary_lines()))
