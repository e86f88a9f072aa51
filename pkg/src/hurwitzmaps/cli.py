"""Command-line front end: ``hurwitzmaps <subcommand> ...``.

Exit status: 0 when every check passed, 1 on a verification failure,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bispherical import MAX_L, verify_bispherical_product
from .cartanweyl import (
    commutator_table,
    extract_generators,
    generating_matrices,
    hadamard_sylvester,
    so5_generators,
)
from .cayley import CAYLEY_DIMS, PARAM_COUNT, cayley_transform
from .exactnum import MultiPoly, format_rational, to_rational, variables
from .hurwitz import SUPPORTED_DIMS, HurwitzDoublingError, build_hurwitz, norm_sq, symbolic_u
from .ksmap import MAP_DIMS, apply_map, quadratic_map
from .laplace import verify_factorization, verify_suite
from .param import (
    R4_ANGLES,
    R8_ANGLES,
    AngleSet,
    apply_map_float,
    cayley_klein,
    cayley_klein_target,
    param_r8,
    spherical_target,
)
from .suite import check_r4r3, check_r8r5, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EMIT_TARGETS = ("hurwitz", "cayley", "ksmap-symbolic", "generators", "so5-table", "hadamard")


class UsageError(Exception):
    pass


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [to_rational(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational list {text!r}: {exc}") from None


def parse_angles(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"angle {item!r} is not of the form name=value")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"angle {key!r} has non-numeric value {value!r}") from None
    return out


def _float(x: float) -> float:
    return float(f"{x:.17g}")


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit status)


def cmd_hurwitz(args):
    if args.n not in SUPPORTED_DIMS:
        raise UsageError(f"--n must be one of {SUPPORTED_DIMS}")
    u = parse_rationals(args.u) if args.u else symbolic_u(args.n)
    H = build_hurwitz(args.n, u)
    ok = (H @ H.T).is_scalar_multiple_of_identity(norm_sq(u))
    return {"n": args.n, "matrix": H.to_json_obj(), "orthogonal": ok}, EXIT_OK if ok else EXIT_FAIL


def cmd_cayley(args):
    if args.n not in CAYLEY_DIMS:
        raise UsageError(f"--n must be one of {CAYLEY_DIMS}")
    u = parse_rationals(args.u) if args.u else symbolic_u(PARAM_COUNT[args.n])
    so = cayley_transform(args.n, u)
    ok = so.check_invariants()
    out = {"n": args.n, "scale_sq": _scalar(so.scale_sq), "matrix": so.matrix.to_json_obj(), "invariants": ok}
    if args.orthonormal:
        out["orthonormal"] = so.orthonormal().to_json_obj()
    return out, EXIT_OK if ok else EXIT_FAIL


def _scalar(x):
    return str(x) if isinstance(x, MultiPoly) else format_rational(x)


def cmd_ksmap(args):
    if args.n not in MAP_DIMS:
        raise UsageError(f"--n must be one of {MAP_DIMS}")
    m = quadratic_map(args.n, args.side)
    if args.symbolic or not args.u:
        return m.to_json_obj(), EXIT_OK
    u = parse_rationals(args.u)
    x = apply_map(m, u)
    return {"n": args.n, "side": args.side, "u": [format_rational(v) for v in u],
            "x": [format_rational(v) for v in x]}, EXIT_OK


def cmd_laplace(args):
    if args.n not in MAP_DIMS:
        raise UsageError(f"--n must be one of {MAP_DIMS}")
    if args.poly:
        f = MultiPoly.parse(args.poly, variables("x", args.n))
        reports = [verify_factorization(args.n, args.side, f)]
    else:
        reports = verify_suite(args.n, args.side, max_degree=args.degree,
                               random_count=args.random_count, seed=args.seed)
    ok = all(r.passed for r in reports)
    return [r.to_json_obj() for r in reports], EXIT_OK if ok else EXIT_FAIL


def cmd_param(args):
    rng = np.random.default_rng(args.seed)
    if args.verify:
        cases = {}
        if args.target in (None, "r4r3"):
            for side in ("left", "right"):
                cases[f"r4r3.{side}"] = check_r4r3(side, rng, args.trials)
        if args.target in (None, "r8r5"):
            cases["r8r5"] = check_r8r5(rng, args.trials)
        ok = all(bool(p) for p, _ in cases.values())
        return {"trials": args.trials, "seed": args.seed,
                "cases": {k: {"passed": bool(p), "residual_summary": s} for k, (p, s) in cases.items()}}, \
            EXIT_OK if ok else EXIT_FAIL
    if args.target is None:
        raise UsageError("--target is required unless --verify is given")
    angles = parse_angles(args.angles or "")
    r = angles.pop("r", 1.0)
    a = AngleSet(r, angles)
    if args.target == "r4r3":
        a.require(R4_ANGLES)
        u = cayley_klein(a)
        x = apply_map_float(3, args.side, u)
        target = cayley_klein_target(a, args.side)
    else:
        a.require(R8_ANGLES)
        u = param_r8(a)
        x = apply_map_float(5, "left", u)
        target = spherical_target(a)
    return {
        "target": args.target,
        "u": [_float(v) for v in u],
        "x": [_float(v) for v in x],
        "expected": [_float(v) for v in target],
        "max_residual": _float(float(np.abs(x - target).max())),
    }, EXIT_OK


def _generator_payload(n: int) -> dict:
    g = extract_generators(generating_matrices(n))
    return g.to_json_obj(commutator_table(g))


def cmd_cartan(args):
    if args.n not in (4, 8, 16):
        raise UsageError("--n must be 4, 8 or 16")
    payload = _generator_payload(args.n)
    if args.emit:
        Path(args.emit).write_text(json.dumps(payload, indent=1) + "\n")
        return {"n": args.n, "generators": len(payload["generators"]), "written": args.emit}, EXIT_OK
    return payload, EXIT_OK


def _so5_payload() -> dict:
    g = so5_generators()
    table = commutator_table(g)
    return {
        "labels": list(g.labels),
        "table": {
            a: {b: _bracket(table, a, b) for b in g.labels} for a in g.labels
        },
        "closed": all(e.closed for e in table.values()),
    }


def _bracket(table, a, b) -> str:
    if a == b:
        return "0"
    entry = table.get((a, b))
    sign = 1
    if entry is None:
        entry, sign = table[(b, a)], -1
    terms = []
    for lab, c in entry.coefficients.items():
        c = sign * c
        coef = "" if c == 1 else "-" if c == -1 else f"{format_rational(c)}*"
        terms.append(f"{coef}{lab}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def cmd_so5_table(args):
    payload = _so5_payload()
    return payload, EXIT_OK if payload["closed"] else EXIT_FAIL


def cmd_bispherical(args):
    for l in (args.l1, args.l2):
        if not 0 <= l <= MAX_L:
            raise UsageError(f"l = {l} is out of range (0 <= l <= {MAX_L})")
    rep = verify_bispherical_product(args.l1, args.l2, trials=args.trials,
                                     rng=np.random.default_rng(args.seed))
    return rep.to_json_obj(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_all(args):
    report = run_suite(args.seed, inject_corruption=args.inject_corruption, only=args.only)
    return report, EXIT_OK if report.passed else EXIT_FAIL


def cmd_emit(args):
    t = args.target
    if t == "hurwitz":
        n = args.n or 8
        if n not in SUPPORTED_DIMS:
            raise UsageError(f"--n must be one of {SUPPORTED_DIMS}")
        payload = {"n": n, "matrix": build_hurwitz(n, symbolic_u(n)).to_json_obj()}
    elif t == "cayley":
        n = args.n or 3
        if n not in (2, 3, 7):
            raise UsageError("symbolic Cayley matrices exist for n in (2, 3, 7)")
        so = cayley_transform(n, symbolic_u(PARAM_COUNT[n]))
        payload = {"n": n, "scale_sq": str(so.scale_sq), "matrix": so.matrix.to_json_obj()}
    elif t == "ksmap-symbolic":
        n = args.n or 3
        if n not in MAP_DIMS:
            raise UsageError(f"--n must be one of {MAP_DIMS}")
        payload = quadratic_map(n, args.side).to_json_obj()
    elif t == "generators":
        payload = _generator_payload(args.n or 8)
    elif t == "so5-table":
        payload = _so5_payload()
    else:
        m = args.m or 2
        if not 1 <= m <= 4:
            raise UsageError("--m must be in 1..4")
        payload = {"m": m, "matrix": hadamard_sylvester(m).to_json_obj()}
    return payload, EXIT_OK


# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for every random draw (default 0)")
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS, help="output format (default json)")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hurwitzmaps", parents=[common],
                                     description="Hurwitz matrices, quadratic maps and their exact verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", parents=[common], help="build H_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", help="comma-separated rationals (default: symbolic)")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("cayley", parents=[common], help="scaled Cayley transform O_n(u)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", help="comma-separated rationals (default: symbolic, n in 2, 3, 7)")
    p.add_argument("--orthonormal", action="store_true", help="also print O_n / |u|^2")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("ksmap", parents=[common], help="quadratic Hurwitz map R^{2(n-1)} -> R^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=("left", "right"), default="right")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--u", help="comma-separated rationals")
    g.add_argument("--symbolic", action="store_true", help="print the component polynomials")
    p.set_defaults(func=cmd_ksmap)

    p = sub.add_parser("laplace-verify", parents=[common], help="Laplacian factorization along a map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--degree", type=int, default=3, choices=(1, 2, 3))
    p.add_argument("--random-count", type=int, default=20)
    p.add_argument("--poly", help="check a single polynomial in x1..xn instead of the suite")
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("param", parents=[common], help="angle parameterizations")
    p.add_argument("--target", choices=("r4r3", "r8r5"))
    p.add_argument("--angles", help="r=...,theta=...,psi=...  (r defaults to 1, missing angles are an error)")
    p.add_argument("--side", choices=("left", "right"), default="left", help="map side for r4r3")
    p.add_argument("--verify", action="store_true", help="random round-trip test instead of a single point")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("cartan", parents=[common], help="generating matrices of so(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", metavar="PATH", help="write the generator set JSON here")
    p.set_defaults(func=cmd_cartan)

    p = sub.add_parser("so5-table", parents=[common], help="so(5) commutator table")
    p.set_defaults(func=cmd_so5_table)

    p = sub.add_parser("bispherical", parents=[common], help="SO(3) bispherical product identity")
    p.add_argument("--l1", type=int, default=1)
    p.add_argument("--l2", type=int, default=1)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=cmd_bispherical)

    p = sub.add_parser("verify-all", parents=[common], help="run the whole verification suite")
    p.add_argument("--inject-corruption", action="store_true",
                   help="add a case that runs the Laplacian check on a corrupted map (must fail)")
    p.add_argument("--only", metavar="PREFIX", help="run only cases whose name starts with PREFIX")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("emit", parents=[common], help="write a JSON artifact")
    p.add_argument("target", choices=EMIT_TARGETS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="Hadamard order exponent")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.set_defaults(func=cmd_emit)
    return parser


def _render(payload, fmt: str) -> str:
    if hasattr(payload, "to_text"):
        return payload.to_text() if fmt == "text" else json.dumps(payload.to_json_obj(), indent=1)
    if fmt == "text" and isinstance(payload, dict) and "cases" in payload:
        return "\n".join(
            f"{'PASS' if c['passed'] else 'FAIL'}  {name}  {c['residual_summary']}"
            for name, c in payload["cases"].items()
        )
    return json.dumps(payload, indent=1)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in (("seed", 0), ("format", "json"), ("out", None)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    try:
        payload, status = args.func(args)
    except HurwitzDoublingError as exc:
        print(f"hurwitzmaps: construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError, ArithmeticError) as exc:
        parser.error(str(exc))
    text = _render(payload, args.format)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
