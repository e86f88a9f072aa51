"""Hurwitz matrices, Cayley transforms, quadratic Hurwitz maps and their verification.

Exact arithmetic lives in :mod:`.exactnum` and :mod:`.matrix`; everything
structural is checked over the rationals.  Angle parameterizations and the
SO(3) bispherical identity use binary64 with explicit tolerances.
"""

__version__ = "0.1.0"

from .exactnum import MultiPoly, Var, format_rational, symbols, to_rational, variables
from .matrix import ExactMatrix, SingularMatrixError
from .hurwitz import HurwitzDoublingError, build_hurwitz, clifford_factors, hurwitz_minor, skew_part
from .cayley import ScaledOrthogonal, cayley_transform, weyl_form
from .ksmap import QuadraticMap, quadratic_map
from .laplace import verify_factorization

__all__ = [
    "__version__",
    "MultiPoly",
    "Var",
    "format_rational",
    "symbols",
    "to_rational",
    "variables",
    "ExactMatrix",
    "SingularMatrixError",
    "HurwitzDoublingError",
    "build_hurwitz",
    "clifford_factors",
    "hurwitz_minor",
    "skew_part",
    "ScaledOrthogonal",
    "cayley_transform",
    "weyl_form",
    "QuadraticMap",
    "quadratic_map",
    "verify_factorization",
]
