"""Dense square matrices over exact rationals or polynomials, plus exact linear algebra.

Entries are either :class:`fractions.Fraction` or
:class:`~hurwitzmaps.exactnum.MultiPoly`; a matrix holding at least one
polynomial is *symbolic*.  Elimination routines (inverse, determinant,
rank, null space) work on rational entries only.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import MultiPoly, Var, format_rational, to_rational

__all__ = [
    "ExactMatrix",
    "SingularMatrixError",
    "rank",
    "nullspace",
    "Span",
]


class SingularMatrixError(ArithmeticError):
    pass


def _entry(x):
    if isinstance(x, MultiPoly):
        return x
    return to_rational(x)


def _is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return x == 0


class ExactMatrix:
    """Immutable square matrix with exact entries, stored row-major."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_entry(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("empty matrix")
        if any(len(r) != n for r in rows):
            raise ValueError("ExactMatrix must be square")
        self._rows = rows

    @classmethod
    def _raw(cls, rows) -> "ExactMatrix":
        m = object.__new__(cls)
        m._rows = rows
        return m

    @classmethod
    def identity(cls, n: int, scalar=1) -> "ExactMatrix":
        s = _entry(scalar)
        z = Fraction(0) if not isinstance(s, MultiPoly) else MultiPoly.zero(s.variables)
        return cls._raw(tuple(tuple(s if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls._raw(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], object]) -> "ExactMatrix":
        return cls([[fn(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[Sequence[Sequence]]]) -> "ExactMatrix":
        """Assemble from a grid of row-lists (blocks need not be square individually)."""
        rows = []
        for block_row in blocks:
            height = len(block_row[0])
            for r in range(height):
                rows.append([x for blk in block_row for x in blk[r]])
        return cls(rows)

    # -- accessors ----------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def entries(self):
        for i, r in enumerate(self._rows):
            for j, x in enumerate(r):
                yield i, j, x

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, MultiPoly) for r in self._rows for x in r)

    def minor(self, k: int) -> "ExactMatrix":
        """Leading principal ``k x k`` submatrix."""
        if not 1 <= k <= self.dim:
            raise ValueError(f"minor size {k} out of range for dimension {self.dim}")
        return ExactMatrix._raw(tuple(r[:k] for r in self._rows[:k]))

    # -- arithmetic ---------------------------------------------------
    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(zip(*self._rows)))

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in r] for r in self._rows])

    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError("expected ExactMatrix")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(tuple(-a for a in r) for r in self._rows))

    def scale(self, c) -> "ExactMatrix":
        c = _entry(c)
        return ExactMatrix._raw(tuple(tuple(c * a for a in r) for r in self._rows))

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        cols = tuple(zip(*other._rows))
        out = []
        for r in self._rows:
            new_row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if _is_zero(a) or _is_zero(b):
                        continue
                    p = a * b
                    acc = p if acc is None else acc + p
                new_row.append(Fraction(0) if acc is None else acc)
            out.append(tuple(new_row))
        return ExactMatrix._raw(tuple(out))

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def matvec(self, vec: Sequence) -> list:
        if len(vec) != self.dim:
            raise ValueError("vector length mismatch")
        out = []
        for r in self._rows:
            acc = Fraction(0)
            for a, b in zip(r, vec):
                if not (_is_zero(a) or _is_zero(b)):
                    acc = a * b + acc
            out.append(acc)
        return out

    # -- predicates ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if other.dim != self.dim:
            return False
        return all(a == b for r, s in zip(self._rows, other._rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(tuple(tuple(str(x) for x in r) for r in self._rows))

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self._rows for x in r)

    def is_antisymmetric(self) -> bool:
        return (self + self.T).is_zero()

    def is_scalar_multiple_of_identity(self, scalar) -> bool:
        return (self - ExactMatrix.identity(self.dim, scalar)).is_zero()

    # -- evaluation ---------------------------------------------------
    def evaluate(self, point: Sequence, vars: Sequence[Var] | None = None) -> "ExactMatrix":
        """Substitute rational values for the polynomial entries.

        ``point`` lists values for ``vars`` (default: variables of the first
        polynomial entry).
        """
        if vars is None:
            vars = next(x.variables for r in self._rows for x in r if isinstance(x, MultiPoly))
        vars = tuple(vars)
        if len(point) != len(vars):
            raise ValueError("point length does not match variable count")
        vals = [to_rational(a) for a in point]

        def ev(x):
            if isinstance(x, MultiPoly):
                return x.embed(vars).evaluate(vals)
            return x

        return ExactMatrix._raw(tuple(tuple(ev(x) for x in r) for r in self._rows))

    # -- elimination (rational entries only) --------------------------
    def _rational_rows(self) -> list[list[Fraction]]:
        if self.is_symbolic:
            raise TypeError("elimination needs rational entries; evaluate the matrix first")
        return [list(r) for r in self._rows]

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """``X`` with ``self @ X == rhs`` by Gauss-Jordan elimination with partial pivoting."""
        self._check(rhs)
        n = self.dim
        a = self._rational_rows()
        b = rhs._rational_rows()
        for col in range(n):
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if a[piv][col] == 0:
                raise SingularMatrixError(f"matrix is singular (column {col + 1})")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                b[col], b[piv] = b[piv], b[col]
            p = a[col][col]
            arow, brow = a[col], b[col]
            for r in range(n):
                if r == col:
                    continue
                f = a[r][col] / p
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], arow)]
                    b[r] = [x - f * y for x, y in zip(b[r], brow)]
        return ExactMatrix([[x / a[i][i] for x in b[i]] for i in range(n)])

    def inverse(self) -> "ExactMatrix":
        return self.solve(ExactMatrix.identity(self.dim))

    def det(self) -> Fraction:
        n = self.dim
        a = self._rational_rows()
        d = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                d = -d
            p = a[col][col]
            d *= p
            for r in range(col + 1, n):
                f = a[r][col] / p
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return d

    # -- serialization ------------------------------------------------
    def to_json_obj(self) -> dict:
        def fmt(x):
            return str(x) if isinstance(x, MultiPoly) else format_rational(x)

        return {"dim": self.dim, "rows": [[fmt(x) for x in r] for r in self._rows]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_obj(), **kw)

    @classmethod
    def from_json_obj(cls, obj: dict, vars: Sequence[Var] | None = None) -> "ExactMatrix":
        rows = obj["rows"]
        if obj.get("dim", len(rows)) != len(rows):
            raise ValueError("dim field disagrees with row count")

        def parse(s: str):
            try:
                return Fraction(s)
            except ValueError:
                return MultiPoly.parse(s, vars)

        parsed = [[parse(s) for s in r] for r in rows]
        polys = [x for r in parsed for x in r if isinstance(x, MultiPoly)]
        if polys and vars is None:
            common = tuple(sorted({v for p in polys for v in p.variables}))
            parsed = [
                [x.embed(common) if isinstance(x, MultiPoly) else MultiPoly.const(x, common) for x in r]
                for r in parsed
            ]
        elif polys:
            parsed = [[x if isinstance(x, MultiPoly) else MultiPoly.const(x, vars) for x in r] for r in parsed]
        return cls(parsed)

    @classmethod
    def from_json(cls, text: str, vars: Sequence[Var] | None = None) -> "ExactMatrix":
        return cls.from_json_obj(json.loads(text), vars)

    def __repr__(self) -> str:
        body = "\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"ExactMatrix(\n [{body}])"


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(map(to_rational, r)) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact rank of a list of equal-length rational vectors."""
    return len(_rref([list(v) for v in vectors])[1])


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of ``{x : matrix @ x = 0}``, one vector per free column."""
    if not matrix:
        raise ValueError("empty matrix")
    ncols = len(matrix[0])
    red, pivots = _rref([list(r) for r in matrix])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


class Span:
    """Incremental echelon basis over Q with coordinates in the inserted generators.

    Vectors are sparse dicts ``{index: Fraction}``.  ``reduce`` returns the
    residual of a vector against the span together with its coefficients on
    the generators that were accepted so far.
    """

    def __init__(self):
        self._pivot_rows: dict[int, tuple[dict, dict]] = {}
        self.generators: list[dict] = []

    def __len__(self) -> int:
        return len(self._pivot_rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        v = {k: to_rational(x) for k, x in vec.items() if x}
        coords: dict = {}
        while True:
            hit = sorted(k for k in v if k in self._pivot_rows)
            if not hit:
                return v, coords
            k = hit[0]
            row, rcoords = self._pivot_rows[k]
            f = v[k]
            for idx, x in row.items():
                s = v.get(idx, 0) - f * x
                if s:
                    v[idx] = s
                else:
                    v.pop(idx, None)
            for g, x in rcoords.items():
                s = coords.get(g, 0) + f * x
                if s:
                    coords[g] = s
                else:
                    coords.pop(g, None)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns False (and changes nothing) when it is already in the span."""
        residual, coords = self.reduce(vec)
        if not residual:
            return False
        g = len(self.generators)
        self.generators.append(dict(vec))
        # residual = vec - sum(coords) -> its coordinates are e_g - coords
        rc = {k: -x for k, x in coords.items()}
        rc[g] = Fraction(1)
        k = min(residual)
        p = residual[k]
        row = {i: x / p for i, x in residual.items()}
        rc = {i: x / p for i, x in rc.items()}
        # keep existing rows reduced in the new pivot
        for pk, (prow, pcoords) in list(self._pivot_rows.items()):
            f = prow.get(k)
            if f:
                nrow = dict(prow)
                for i, x in row.items():
                    s = nrow.get(i, 0) - f * x
                    if s:
                        nrow[i] = s
                    else:
                        nrow.pop(i, None)
                ncoords = dict(pcoords)
                for i, x in rc.items():
                    s = ncoords.get(i, 0) - f * x
                    if s:
                        ncoords[i] = s
                    else:
                        ncoords.pop(i, None)
                self._pivot_rows[pk] = (nrow, ncoords)
        self._pivot_rows[k] = (row, rc)
        return True
