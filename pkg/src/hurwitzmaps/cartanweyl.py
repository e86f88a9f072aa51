"""Generating matrices of the Cartan-Weyl basis of so(n) and the so(5) generator tables.

A generating matrix is ``u_1 D + sum_k u_k K_k`` with D diagonal and every
``K_k`` a signed sum of elementary antisymmetric matrices Sigma_ij over a
perfect matching of {1..n}.  For n = 8 the seven matchings and their signs
are read off the canonical matrix; further generating matrices come from
cyclically shifting which sign row each parameter uses.  Over n/2 shifts the
skew coefficients span so(n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactnum import MultiPoly, format_rational, to_rational
from .hurwitz import hurwitz_minor, linear_coefficients, symbolic_u
from .matrix import ExactMatrix, Span, rank

__all__ = [
    "AdjointElement",
    "GeneratingMatrix",
    "GeneratorSet",
    "CommutatorEntry",
    "GeneratorSpanError",
    "H8_CANONICAL_TABLE",
    "H8_REFERENCE_BRACKETS",
    "REFERENCE_SIGN_MATRICES",
    "sigma",
    "decompose_adjoint",
    "canonical_h8",
    "hadamard_sylvester",
    "generating_matrices",
    "extract_generators",
    "so5_generators",
    "hat_signs",
    "hatted_h5",
    "commutator_table",
    "lie_closure_rank",
    "GaussMatrix",
    "ladder_relations",
    "literal_rule_mismatches",
]


class GeneratorSpanError(ValueError):
    def __init__(self, n: int, achieved: int):
        self.n = n
        self.achieved = achieved
        super().__init__(
            f"generators span only {achieved} of the {n * (n - 1) // 2} dimensions of so({n})"
        )


# ---------------------------------------------------------------------------
# elementary antisymmetric matrices


@dataclass(frozen=True)
class AdjointElement:
    n: int
    i: int
    j: int
    matrix: ExactMatrix


def _sigma_matrix(n: int, i: int, j: int) -> ExactMatrix:
    """Sigma_ij for any i != j (Sigma_ji = -Sigma_ij)."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[i - 1][j - 1] = Fraction(1)
    rows[j - 1][i - 1] = Fraction(-1)
    return ExactMatrix(rows)


def sigma(n: int, i: int, j: int) -> AdjointElement:
    """Elementary antisymmetric matrix with +1 at (i, j) and -1 at (j, i), 1 <= i < j <= n."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return AdjointElement(n, i, j, _sigma_matrix(n, i, j))


# ---------------------------------------------------------------------------
# generating matrices


@dataclass(frozen=True)
class GeneratingMatrix:
    """``u_1 * diag(identity_part) + sum_k u_k * sum_(s, i, j) s * Sigma_ij``.

    ``brackets`` maps the parameter index k >= 2 to its signed Sigma terms
    ``(sign, i, j)``.
    """

    n: int
    identity_part: tuple[Fraction, ...]
    brackets: dict[int, tuple[tuple[Fraction, int, int], ...]]
    name: str = ""

    def coefficient(self, k: int) -> ExactMatrix:
        if k == 1:
            return ExactMatrix([[self.identity_part[i] if i == j else 0 for j in range(self.n)]
                                for i in range(self.n)])
        total = ExactMatrix.zeros(self.n)
        for s, i, j in self.brackets[k]:
            total = total + _sigma_matrix(self.n, i, j).scale(s)
        return total

    def skew_coefficients(self) -> list[tuple[int, ExactMatrix]]:
        return [(k, self.coefficient(k)) for k in sorted(self.brackets)]

    def matrix(self, u: Sequence) -> ExactMatrix:
        """Evaluate at a parameter vector (rational or symbolic) of length n."""
        if len(u) != self.n:
            raise ValueError(f"generating matrix of order {self.n} takes {self.n} parameters")
        total = self.coefficient(1).scale(u[0])
        for k, C in self.skew_coefficients():
            total = total + C.scale(u[k - 1])
        return total

    def sign_row(self, k: int) -> tuple[int, ...]:
        return tuple(int(s) for s, _, _ in self.brackets[k])


def decompose_adjoint(H: ExactMatrix, name: str = "") -> GeneratingMatrix:
    """Split a matrix linear in u_1..u_n into identity part and Sigma brackets.

    The u_1 coefficient must be diagonal and every other coefficient
    antisymmetric; the result rebuilds ``H`` exactly.
    """
    n = H.dim
    u = symbolic_u(n)
    vars = u[0].variables
    coeffs = linear_coefficients(H, vars)
    D = coeffs[vars[0]]
    if any(D[i, j] != 0 for i in range(n) for j in range(n) if i != j):
        raise ValueError("u_1 coefficient is not diagonal")
    brackets = {}
    for k, v in enumerate(vars[1:], start=2):
        C = coeffs[v]
        if not C.is_antisymmetric():
            raise ValueError(f"u_{k} coefficient is not antisymmetric")
        terms = tuple(
            (C[i, j], i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if C[i, j] != 0
        )
        if terms:
            brackets[k] = terms
    gm = GeneratingMatrix(n, tuple(D[i, i] for i in range(n)), brackets, name)
    if gm.matrix(u) != H:
        raise AssertionError("decomposition does not rebuild its input")
    return gm


# fmt: off
H8_CANONICAL_TABLE = (
    ((+1, 1), (-1, 2), (-1, 3), (-1, 4), (+1, 5), (-1, 6), (-1, 7), (-1, 8)),
    ((+1, 2), (+1, 1), (+1, 4), (-1, 3), (+1, 6), (+1, 5), (-1, 8), (+1, 7)),
    ((+1, 3), (-1, 4), (+1, 1), (+1, 2), (+1, 7), (+1, 8), (+1, 5), (-1, 6)),
    ((+1, 4), (+1, 3), (-1, 2), (+1, 1), (+1, 8), (-1, 7), (+1, 6), (+1, 5)),
    ((-1, 5), (-1, 6), (-1, 7), (-1, 8), (+1, 1), (+1, 2), (+1, 3), (+1, 4)),
    ((+1, 6), (-1, 5), (-1, 8), (+1, 7), (-1, 2), (+1, 1), (-1, 4), (+1, 3)),
    ((+1, 7), (+1, 8), (-1, 5), (-1, 6), (-1, 3), (+1, 4), (+1, 1), (-1, 2)),
    ((+1, 8), (-1, 7), (+1, 6), (-1, 5), (-1, 4), (-1, 3), (+1, 2), (+1, 1)),
)

# parameter -> signed pairs, in reference order; (i, i) marks identity terms
H8_REFERENCE_BRACKETS = {
    1: ((+1, 1, 1), (+1, 2, 2), (+1, 3, 3), (+1, 4, 4)),
    5: ((+1, 1, 5), (+1, 2, 6), (+1, 3, 7), (+1, 4, 8)),
    2: ((-1, 1, 2), (+1, 3, 4), (+1, 5, 6), (-1, 7, 8)),
    6: ((-1, 1, 6), (+1, 2, 5), (-1, 3, 8), (+1, 4, 7)),
    3: ((-1, 1, 3), (-1, 2, 4), (+1, 5, 7), (+1, 6, 8)),
    7: ((-1, 1, 7), (+1, 2, 8), (+1, 3, 5), (-1, 4, 6)),
    4: ((-1, 1, 4), (+1, 2, 3), (-1, 6, 7), (+1, 5, 8)),
    8: ((-1, 1, 8), (-1, 2, 7), (+1, 3, 6), (+1, 4, 5)),
}

REFERENCE_SIGN_MATRICES = (
    ((1, 1, 1, 1), (-1, 1, 1, -1), (-1, -1, 1, 1), (-1, 1, -1, 1)),
    ((1, 1, 1, 1), (-1, 1, -1, 1), (-1, 1, 1, -1), (-1, -1, 1, 1)),
)
# fmt: on


def canonical_h8(u: Sequence) -> ExactMatrix:
    """The canonical order-8 generating matrix, entry by entry."""
    if len(u) != 8:
        raise ValueError("canonical H_8 takes 8 parameters")
    return ExactMatrix([[u[k - 1] if s > 0 else -u[k - 1] for s, k in row] for row in H8_CANONICAL_TABLE])


def hadamard_sylvester(m: int) -> ExactMatrix:
    """Sylvester-Hadamard matrix of order 2^m, 1 <= m <= 4."""
    if not 1 <= m <= 4:
        raise ValueError(f"order exponent {m} outside 1..4")
    H = ExactMatrix([[1, 1], [1, -1]])
    for _ in range(m - 1):
        H = ExactMatrix.from_blocks([[H.rows, H.rows], [H.rows, (-H).rows]])
    return H


def _xor_pairs(n: int, k: int) -> list[tuple[int, int]]:
    """Perfect matching i <-> i xor (k-1) on 1..n, ordered by the smaller index."""
    a = k - 1
    if a == 0:
        return [(i + 1, i + 1) for i in range(n // 2)]
    return [(i + 1, (i ^ a) + 1) for i in range(n) if i < (i ^ a)]


def _shifted(n: int, pairs_of: dict[int, list], sign_rows: dict[int, list], shift: int, name: str) -> GeneratingMatrix:
    """Generating matrix in which parameter k takes the sign row ``shift`` places further along its group."""
    group_size = n // 2
    identity = [Fraction(0)] * n
    brackets = {}
    for k, pairs in pairs_of.items():
        g, p = divmod(k - 1, group_size)
        row = sign_rows[g * group_size + (p + shift) % group_size + 1]
        if k == 1:
            for s, (i, _) in zip(row, pairs):
                identity[i - 1] = Fraction(s)
                identity[i - 1 + group_size] = Fraction(s)
            continue
        brackets[k] = tuple((Fraction(s), i, j) for s, (i, j) in zip(row, pairs))
    return GeneratingMatrix(n, tuple(identity), brackets, name)


def _so4_pair() -> list[GeneratingMatrix]:
    hs = hat_signs()
    mats = []
    for fam in ("S", "T"):
        brackets = {}
        for k, idx in ((2, 3), (3, 2), (4, 1)):
            gen = _SO5_TERMS[f"{fam}{idx}"]
            s = hs[f"{fam}{idx}"]
            terms = tuple(sorted((Fraction(s * c), i, j) for c, i, j in _signed_sigma_terms(gen) if max(i, j) <= 4))
            brackets[k] = tuple(sorted(terms, key=lambda t: (t[1], t[2])))
        mats.append(GeneratingMatrix(4, (Fraction(1),) * 4, brackets, f"H4^{len(mats) + 1}"))
    return mats


def generating_matrices(n: int) -> list[GeneratingMatrix]:
    """The n/2 generating matrices for n in {4, 8, 16}; raises if their skew parts miss so(n)."""
    if n == 4:
        mats = _so4_pair()
    elif n == 8:
        pairs_of = {k: [(i, j) for _, i, j in H8_REFERENCE_BRACKETS[k]] for k in range(1, 9)}
        sign_rows = {}
        for g, M in enumerate(REFERENCE_SIGN_MATRICES):
            for p, row in enumerate(M):
                sign_rows[4 * g + p + 1] = list(row)
        mats = [_shifted(8, pairs_of, sign_rows, j, f"H8^{j + 1}") for j in range(4)]
    elif n == 16:
        pairs_of = {k: _xor_pairs(16, k) for k in range(1, 17)}
        had = hadamard_sylvester(4)
        sign_rows = {k: [int(x) for x in had.row(k - 1)[:8]] for k in range(1, 17)}
        mats = [_shifted(16, pairs_of, sign_rows, j, f"H16^{j + 1}") for j in range(8)]
    else:
        raise ValueError(f"generating matrices are built for n in (4, 8, 16), got {n}")
    gens = extract_generators(mats)
    achieved = rank([_skew_vector(g) for g in gens.generators])
    if achieved != n * (n - 1) // 2:
        raise GeneratorSpanError(n, achieved)
    return mats


# ---------------------------------------------------------------------------
# generator sets and commutators


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    labels: tuple[str, ...]
    generators: tuple[ExactMatrix, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.generators):
            raise ValueError("one label per generator")
        for lab, g in zip(self.labels, self.generators):
            if g.dim != self.n:
                raise ValueError(f"{lab} has dimension {g.dim}, expected {self.n}")
            if not g.is_antisymmetric():
                raise ValueError(f"{lab} is not antisymmetric")

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, label: str) -> ExactMatrix:
        return self.generators[self.labels.index(label)]

    def rank(self) -> int:
        return rank([_skew_vector(g) for g in self.generators])

    def to_json_obj(self, table: "dict | None" = None) -> dict:
        out = {
            "n": self.n,
            "generators": [
                {"label": lab, "matrix": g.to_json_obj()} for lab, g in zip(self.labels, self.generators)
            ],
        }
        if table is not None:
            out["structure_constants"] = [e.to_json_obj() for e in table.values()]
        return out

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GeneratorSet":
        labels = tuple(g["label"] for g in obj["generators"])
        mats = tuple(ExactMatrix.from_json_obj(g["matrix"]) for g in obj["generators"])
        return cls(obj["n"], labels, mats)


def extract_generators(mats: Sequence[GeneratingMatrix]) -> GeneratorSet:
    labels, gens = [], []
    for gm in mats:
        for k, C in gm.skew_coefficients():
            labels.append(f"{gm.name}[u_{k}]")
            gens.append(C)
    return GeneratorSet(mats[0].n, tuple(labels), tuple(gens))


def _skew_vector(M: ExactMatrix) -> list[Fraction]:
    n = M.dim
    return [M[i, j] for i in range(n) for j in range(i + 1, n)]


def _sparse(M: ExactMatrix) -> dict[int, dict[int, Fraction]]:
    rows: dict[int, dict[int, Fraction]] = {}
    for i, j, x in M.entries():
        if x != 0:
            rows.setdefault(i, {})[j] = x
    return rows


def _sparse_product(A: dict, B: dict) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for i, row in A.items():
        for k, a in row.items():
            for j, b in B.get(k, {}).items():
                key = (i, j)
                s = out.get(key, 0) + a * b
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def _sparse_commutator_vec(A: dict, B: dict) -> dict[int, Fraction]:
    """Upper-triangle coordinates (pair index) of A B - B A, keyed as i * BIG + j."""
    ab = _sparse_product(A, B)
    for key, v in _sparse_product(B, A).items():
        s = ab.get(key, 0) - v
        if s:
            ab[key] = s
        else:
            ab.pop(key, None)
    return ab


def _upper(vec: dict[tuple[int, int], Fraction], n: int) -> dict[int, Fraction]:
    return {i * n + j: v for (i, j), v in vec.items() if i < j}


def _from_upper(vec: dict[int, Fraction], n: int) -> ExactMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for key, v in vec.items():
        i, j = divmod(key, n)
        rows[i][j] = v
        rows[j][i] = -v
    return ExactMatrix(rows)


@dataclass(frozen=True)
class CommutatorEntry:
    a: str
    b: str
    coefficients: dict[str, Fraction]
    residual: ExactMatrix

    @property
    def closed(self) -> bool:
        return self.residual.is_zero()

    def to_json_obj(self) -> dict:
        out = {
            "pair": [self.a, self.b],
            "coefficients": {k: format_rational(v) for k, v in self.coefficients.items()},
            "closed": self.closed,
        }
        if not self.closed:
            out["residual"] = self.residual.to_json_obj()
        return out


def commutator_table(g: GeneratorSet) -> dict[tuple[str, str], CommutatorEntry]:
    """[X_a, X_b] for every pair a < b, written in the span of the set plus a residual."""
    n = g.n
    span = Span()
    accepted = []  # span generator index -> label index
    for idx, G in enumerate(g.generators):
        if span.add(_upper({(i, j): v for (i, j), v in _flat(G).items()}, n)):
            accepted.append(idx)
    sparse = [_sparse(G) for G in g.generators]
    table = {}
    for a, b in combinations(range(len(g)), 2):
        vec = _sparse_commutator_vec(sparse[a], sparse[b])
        residual, coords = span.reduce(_upper(vec, n))
        coeffs = {g.labels[accepted[k]]: v for k, v in sorted(coords.items())}
        table[(g.labels[a], g.labels[b])] = CommutatorEntry(
            g.labels[a], g.labels[b], coeffs, _from_upper(residual, n)
        )
    return table


def _flat(M: ExactMatrix) -> dict[tuple[int, int], Fraction]:
    return {(i, j): x for i, j, x in M.entries() if x != 0}


def lie_closure_rank(g: GeneratorSet) -> int:
    """Dimension of the smallest commutator-closed subspace containing ``g``.

    Commutators are added until no new direction appears.  Since every
    element is antisymmetric the closure lies in so(n); reaching
    n(n-1)/2 therefore ends the search.
    """
    if len(g) == 0:
        raise ValueError("empty generator set")
    n = g.n
    full = n * (n - 1) // 2
    span = Span()
    basis: list[dict] = []
    for G in g.generators:
        if span.add(_upper(_flat(G), n)):
            basis.append(_sparse(G))
    i = 0
    while i < len(basis) and len(span) < full:
        for j in range(i):
            if len(span) >= full:
                break
            vec = _sparse_commutator_vec(basis[i], basis[j])
            up = _upper(vec, n)
            if span.add(up):
                basis.append(_sparse(_from_upper(up, n)))
        i += 1
    return len(span)


# ---------------------------------------------------------------------------
# so(5)

# each generator as a list of (coefficient, i, j) meaning coefficient * L_ij
_SO5_TERMS = {
    "S1": ((1, 2, 3), (1, 1, 4)),
    "S2": ((1, 3, 1), (1, 2, 4)),
    "S3": ((1, 1, 2), (1, 3, 4)),
    "T1": ((1, 2, 3), (-1, 1, 4)),
    "T2": ((1, 3, 1), (-1, 2, 4)),
    "T3": ((1, 1, 2), (-1, 3, 4)),
    "U1": ((1, 1, 5),),
    "U2": ((1, 2, 5),),
    "V1": ((1, 3, 5),),
    "V2": ((1, 4, 5),),
}
SO5_LABELS = tuple(_SO5_TERMS)


def _signed_sigma_terms(terms):
    """(c, i, j) with L_ij -> Sigma_ij rewritten so that i < j."""
    for c, i, j in terms:
        yield (c, i, j) if i < j else (-c, j, i)


def _l_combination(n: int, terms) -> ExactMatrix:
    total = ExactMatrix.zeros(n)
    for c, i, j in terms:
        total = total + _sigma_matrix(n, i, j).scale(c)
    return total


def so5_generators() -> GeneratorSet:
    """The ten so(5) generators with L_ij realized as Sigma_ij (L_ji = -L_ij)."""
    return GeneratorSet(5, SO5_LABELS, tuple(_l_combination(5, _SO5_TERMS[k]) for k in SO5_LABELS))


# u_k -> hatted generator in the order the 5x5 generating matrix is written
H5_HATTED = ((2, "S3"), (3, "S2"), (4, "S1"), (5, "U1"), (6, "U2"), (7, "V1"), (8, "V2"))


def hat_signs() -> dict[str, int]:
    """Sign relating each hatted generator to its L-realization, read off the 5x5 Hurwitz minor.

    The minor is ``u_1 I + sum u_k * hat(X_k)``; for each k the u_k
    coefficient must be +/- the realized generator.  T-hats reuse the sign
    of the S with the same index.
    """
    u = symbolic_u(8)
    coeffs = linear_coefficients(hurwitz_minor(5, u), u[0].variables)
    gens = so5_generators()
    signs = {}
    for k, lab in H5_HATTED:
        C = coeffs[u[0].variables[k - 1]]
        G = gens[lab]
        if C == G:
            signs[lab] = 1
        elif C == -G:
            signs[lab] = -1
        else:
            raise ValueError(f"u_{k} coefficient is not +/- {lab}")
    for a in "123":
        signs[f"T{a}"] = signs[f"S{a}"]
    return signs


def hatted_h5(u: Sequence, family: str = "S") -> ExactMatrix:
    """u_1 I + u_2 X3^ + u_3 X2^ + u_4 X1^ + u_5 U1^ + u_6 U2^ + u_7 V1^ + u_8 V2^ with X = S or T."""
    if family not in ("S", "T"):
        raise ValueError("family must be 'S' or 'T'")
    gens = so5_generators()
    hs = hat_signs()
    total = ExactMatrix.identity(5, u[0])
    for k, lab in H5_HATTED:
        lab = family + lab[1:] if lab[0] == "S" else lab
        total = total + gens[lab].scale(u[k - 1]).scale(hs[lab])
    return total


@dataclass(frozen=True)
class GaussMatrix:
    """Matrix over the Gaussian rationals, stored as real and imaginary ExactMatrix parts."""

    re: ExactMatrix
    im: ExactMatrix

    @classmethod
    def combo(cls, real: ExactMatrix, imag: ExactMatrix) -> "GaussMatrix":
        return cls(real, imag)

    def commutator_with_real(self, A: ExactMatrix) -> "GaussMatrix":
        """[A, self] for real A."""
        return GaussMatrix(A.commutator(self.re), A.commutator(self.im))

    def eigen_factor(self, other: "GaussMatrix"):
        """lambda (as a (re, im) pair of Fractions) with other == lambda * self, or None."""
        # find a nonzero entry of self to fix lambda
        n = self.re.dim
        for i in range(n):
            for j in range(n):
                a, b = self.re[i, j], self.im[i, j]
                if a or b:
                    c, d = other.re[i, j], other.im[i, j]
                    den = a * a + b * b
                    lam = ((c * a + d * b) / den, (d * a - c * b) / den)
                    scaled = GaussMatrix(
                        self.re.scale(lam[0]) - self.im.scale(lam[1]),
                        self.re.scale(lam[1]) + self.im.scale(lam[0]),
                    )
                    if scaled == other:
                        return lam
                    return None
        return None


def ladder_relations() -> list[dict]:
    """ad(S3) and ad(T3) acting on the complex combinations U_pm, V_pm.

    V_pm is tried both as L35 +/- i L45 and as L25 +/- i L45; a
    relation holds when [H, X] = lambda X for a Gaussian rational lambda.
    """
    g = so5_generators()
    L = lambda i, j: _l_combination(5, ((1, i, j),))
    combos = {
        "U+": GaussMatrix(L(1, 5), L(2, 5)),
        "U-": GaussMatrix(L(1, 5), -L(2, 5)),
        "V+ (L35 + i L45)": GaussMatrix(L(3, 5), L(4, 5)),
        "V- (L35 - i L45)": GaussMatrix(L(3, 5), -L(4, 5)),
        "V+ (L25 + i L45)": GaussMatrix(L(2, 5), L(4, 5)),
        "V- (L25 - i L45)": GaussMatrix(L(2, 5), -L(4, 5)),
    }
    out = []
    for h in ("S3", "T3"):
        for name, X in combos.items():
            lam = X.eigen_factor(X.commutator_with_real(g[h]))
            out.append({
                "cartan": h,
                "ladder": name,
                "eigenvalue": None if lam is None else f"{format_rational(lam[0])}+{format_rational(lam[1])}i",
                "holds": lam is not None,
            })
    return out


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _sigma_or_zero(n: int, i: int, j: int) -> ExactMatrix:
    return ExactMatrix.zeros(n) if i == j else _sigma_matrix(n, i, j)


def literal_rule_mismatches(n: int = 5) -> dict:
    """Compare the literal L-commutator rule with matrix multiplication of Sigma realizations.

    Literal form (factor i dropped, overall sign fitted):
        [L_ij, L_kl] = d_ik L_jl + d_jk L_ik - d_il L_jk - d_jl L_il
    Matrix ground truth:
        [S_ij, S_kl] = d_jk S_il - d_ik S_jl - d_jl S_ik + d_il S_jk
    """
    idx = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    results = {}
    for sign in (1, -1):
        bad = []
        for (i, j), (k, l) in ((p, q) for p in idx for q in idx):
            truth = _sigma_matrix(n, i, j).commutator(_sigma_matrix(n, k, l))
            literal = (
                _sigma_or_zero(n, j, l).scale(_delta(i, k))
                + _sigma_or_zero(n, i, k).scale(_delta(j, k))
                - _sigma_or_zero(n, j, k).scale(_delta(i, l))
                - _sigma_or_zero(n, i, l).scale(_delta(j, l))
            ).scale(sign)
            if truth != literal:
                bad.append((i, j, k, l))
        results[sign] = bad
    best = min(results, key=lambda s: len(results[s]))
    corrected_ok = all(
        _sigma_matrix(n, i, j).commutator(_sigma_matrix(n, k, l))
        == (
            _sigma_or_zero(n, i, l).scale(_delta(j, k))
            - _sigma_or_zero(n, j, l).scale(_delta(i, k))
            - _sigma_or_zero(n, i, k).scale(_delta(j, l))
            + _sigma_or_zero(n, j, k).scale(_delta(i, l))
        )
        for (i, j), (k, l) in ((p, q) for p in idx for q in idx)
    )
    return {
        "pairs_checked": len(idx) ** 2,
        "best_overall_sign": best,
        "mismatches": results[best],
        "corrected_rule_holds": corrected_ok,
    }
