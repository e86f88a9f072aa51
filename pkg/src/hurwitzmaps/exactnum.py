"""Exact rationals and sparse multivariate polynomials over Q.

Polynomials carry an ordered tuple of variables and a dict mapping dense
exponent tuples to :class:`fractions.Fraction` coefficients.  Nothing here
ever rounds.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import chain
from numbers import Rational as _RationalABC
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "Var",
    "MultiPoly",
    "to_rational",
    "format_rational",
    "variables",
    "symbols",
    "poly_eval",
    "poly_partial",
    "poly_compose",
]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a canonical Fraction.

    Floats are refused: an exact value must never silently pick up binary
    rounding noise.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q) -> str:
    q = to_rational(q)
    return str(q)


class Var(NamedTuple):
    """Variable identifier: a family name plus a 1-based index (``u3``, ``x1``)."""

    name: str
    index: int

    def __str__(self) -> str:
        return f"{self.name}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Var":
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)", text.strip())
        if m is None:
            raise ValueError(f"bad variable identifier {text!r}")
        return cls(m.group(1), int(m.group(2)))


def variables(name: str, count: int) -> tuple[Var, ...]:
    """``variables("u", 3) == (u1, u2, u3)``."""
    return tuple(Var(name, i) for i in range(1, count + 1))


def symbols(name: str, count: int) -> list["MultiPoly"]:
    """The generators ``name1 .. name<count>`` as polynomials over a shared variable tuple."""
    vs = variables(name, count)
    return [MultiPoly.var(v, vs) for v in vs]


Scalar = Union[int, Fraction]


class MultiPoly:
    """Immutable polynomial with exact rational coefficients.

    Binary operations between polynomials over different variable tuples
    first embed both operands into the sorted union of their variables.
    """

    __slots__ = ("_vars", "_terms", "_index")

    def __init__(self, vars: Sequence[Var], terms: dict | None = None, *, _trusted: bool = False):
        vars = tuple(vars)
        if _trusted:
            self._vars = vars
            self._terms = terms
        else:
            if len(set(vars)) != len(vars):
                raise ValueError("duplicate variables")
            nv = len(vars)
            clean = {}
            for exp, c in (terms or {}).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nv:
                    raise ValueError(f"exponent {exp} does not match {nv} variables")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent")
                c = to_rational(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
            self._vars = vars
            self._terms = clean
        self._index = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c, vars: Sequence[Var] = ()) -> "MultiPoly":
        c = to_rational(c)
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def zero(cls, vars: Sequence[Var] = ()) -> "MultiPoly":
        return cls(tuple(vars), {}, _trusted=True)

    @classmethod
    def var(cls, v: Var, vars: Sequence[Var] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (v,)
        exp = tuple(1 if w == v else 0 for w in vars)
        if sum(exp) != 1:
            raise ValueError(f"{v} not in variable list")
        return cls(vars, {exp: Fraction(1)}, _trusted=True)

    # -- accessors ----------------------------------------------------
    @property
    def variables(self) -> tuple[Var, ...]:
        return self._vars

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def position(self, v: Var) -> int:
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self._vars)}
        try:
            return self._index[v]
        except KeyError:
            raise ValueError(f"unknown variable {v}") from None

    def used_variables(self) -> tuple[Var, ...]:
        used = [False] * len(self._vars)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, f in zip(self._vars, used) if f)

    # -- variable bookkeeping ----------------------------------------
    def embed(self, vars: Sequence[Var]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every variable in use."""
        vars = tuple(vars)
        if vars == self._vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        for v in self.used_variables():
            if v not in pos:
                raise ValueError(f"cannot drop variable {v} still in use")
        mapping = [(pos[v], i) for i, v in enumerate(self._vars) if v in pos]
        nv = len(vars)
        out = {}
        for e, c in self._terms.items():
            new = [0] * nv
            for j, i in mapping:
                new[j] = e[i]
            out[tuple(new)] = c
        return MultiPoly(vars, out, _trusted=True)

    def _aligned(self, other: "MultiPoly"):
        if self._vars == other._vars:
            return self, other
        merged = tuple(sorted(set(self._vars) | set(other._vars)))
        return self.embed(merged), other.embed(merged)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other, self._vars)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        a, b = self._aligned(self._coerce(other))
        if len(a._terms) < len(b._terms):
            a, b = b, a
        out = dict(a._terms)
        for e, c in b._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(a._vars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self._vars, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __pos__(self) -> "MultiPoly":
        return self

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = to_rational(c)
        if not c:
            return MultiPoly.zero(self._vars)
        return MultiPoly(self._vars, {e: c * v for e, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        out: dict = {}
        get = out.get
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                s = get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly(a._vars, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return self.exact_divide(other)
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / divisor``; raises ``ValueError`` unless the division is exact."""
        a, d = self._aligned(self._coerce(divisor))
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = max(d._terms)
        lc = d._terms[lead]
        rem = dict(a._terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            if any(x < y for x, y in zip(e, lead)):
                raise ValueError("polynomial division is not exact")
            qe = tuple(x - y for x, y in zip(e, lead))
            qc = rem[e] / lc
            quot[qe] = qc
            for de, dc in d._terms.items():
                te = tuple(x + y for x, y in zip(qe, de))
                v = rem.get(te, 0) - qc * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MultiPoly(a._vars, quot, _trusted=True)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self._vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._sparse_terms()))

    def _sparse_terms(self):
        for e, c in self._terms.items():
            yield tuple((v, k) for v, k in zip(self._vars, e) if k), c

    # -- calculus and substitution -----------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        return poly_eval(self, point)

    def partial(self, v: Var) -> "MultiPoly":
        return poly_partial(self, v)

    def compose(self, subst: Sequence["MultiPoly"]) -> "MultiPoly":
        return poly_compose(self, subst)

    def substitute(self, assignment: dict) -> "MultiPoly":
        """Replace selected variables by constants, keeping the variable tuple."""
        pos = {self.position(v): to_rational(c) for v, c in assignment.items()}
        out: dict = {}
        for e, c in self._terms.items():
            new = list(e)
            for i, val in pos.items():
                if new[i]:
                    c = c * val ** new[i]
                    new[i] = 0
            if c:
                k = tuple(new)
                s = out.get(k, 0) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return MultiPoly(self._vars, out, _trusted=True)

    # -- text form ----------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                str(v) if k == 1 else f"{v}^{k}" for v, k in zip(self._vars, e) if k
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str, vars: Sequence[Var] | None = None) -> "MultiPoly":
        """Inverse of ``str``: ``"u1^2 - 2*u1*u2 + 1/2*x3"``.

        Without ``vars`` the variable tuple is the sorted set of names seen.
        """
        text = text.strip()
        if not text:
            raise ValueError("empty polynomial string")
        tokens = re.findall(r"[+-]|[^+\-\s]+", text.replace(" ", ""))
        raw_terms = []
        sign = 1
        expect_term = True
        for tok in tokens:
            if tok in "+-":
                if not expect_term:
                    expect_term = True
                    sign = 1
                if tok == "-":
                    sign = -sign
                continue
            if not expect_term:
                raise ValueError(f"malformed polynomial {text!r}")
            coeff = Fraction(sign)
            powers: dict[Var, int] = {}
            for factor in tok.split("*"):
                if not factor:
                    raise ValueError(f"malformed polynomial {text!r}")
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                base, _, exp = factor.partition("^")
                v = Var.parse(base)
                powers[v] = powers.get(v, 0) + (int(exp) if exp else 1)
            raw_terms.append((coeff, powers))
            expect_term = False
            sign = 1
        if expect_term:
            raise ValueError(f"dangling sign in {text!r}")
        seen = set(chain.from_iterable(p.keys() for _, p in raw_terms))
        if vars is None:
            vars = tuple(sorted(seen))
        vars = tuple(vars)
        missing = seen - set(vars)
        if missing:
            raise ValueError(f"variables {sorted(map(str, missing))} not in variable list")
        terms: dict = {}
        for coeff, powers in raw_terms:
            e = tuple(powers.get(v, 0) for v in vars)
            terms[e] = terms.get(e, 0) + coeff
        return cls(vars, terms)


def _as_poly(p) -> MultiPoly:
    return p if isinstance(p, MultiPoly) else MultiPoly.const(p)


def poly_eval(p: MultiPoly, point: Sequence) -> Fraction:
    """Exact value of ``p`` at ``point`` (one entry per variable of ``p``)."""
    if len(point) != len(p.variables):
        raise ValueError(
            f"point has {len(point)} coordinates, polynomial has {len(p.variables)} variables"
        )
    vals = [to_rational(a) for a in point]
    total = Fraction(0)
    for e, c in p.items():
        t = c
        for a, k in zip(vals, e):
            if k:
                t *= a**k
        total += t
    return total


def poly_partial(p: MultiPoly, v: Var) -> MultiPoly:
    """Exact partial derivative with respect to ``v``."""
    i = p.position(v)
    out: dict = {}
    for e, c in p.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = c * k
    return MultiPoly(p.variables, out, _trusted=True)


def poly_compose(f: MultiPoly, subst: Sequence) -> MultiPoly:
    """``f(subst_1, ..., subst_k)``; the result lives over the substitutes' variables."""
    subst = [_as_poly(s) for s in subst]
    if len(subst) != len(f.variables):
        raise ValueError(
            f"{len(subst)} substitutes given for {len(f.variables)} variables"
        )
    if subst:
        target = tuple(sorted(set(chain.from_iterable(s.variables for s in subst))))
        if all(s.variables == subst[0].variables for s in subst):
            target = subst[0].variables
        subst = [s.embed(target) for s in subst]
    else:
        target = ()
    powers: list[dict[int, MultiPoly]] = [{} for _ in subst]

    def power(i: int, k: int) -> MultiPoly:
        cache = powers[i]
        if k not in cache:
            cache[k] = subst[i] if k == 1 else power(i, k - 1) * subst[i]
        return cache[k]

    result = MultiPoly.zero(target)
    for e, c in f.items():
        term = MultiPoly.const(c, target)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def linear_combination(coeffs: Iterable, polys: Iterable[MultiPoly], vars: Sequence[Var]) -> MultiPoly:
    """Sum of ``c_i * p_i`` accumulated in one dict (cheaper than chained ``+``)."""
    out: dict = {}
    vars = tuple(vars)
    for c, p in zip(coeffs, polys):
        c = to_rational(c)
        if not c:
            continue
        p = p.embed(vars)
        for e, v in p.items():
            s = out.get(e, 0) + c * v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return MultiPoly(vars, out, _trusted=True)
