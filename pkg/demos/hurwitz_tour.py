"""Hurwitz matrices by doubling, and why the doubling stops at n = 8.

Run: python3 demos/hurwitz_tour.py
"""
from hurwitzmaps import HurwitzDoublingError, build_hurwitz, clifford_factors
from hurwitzmaps.hurwitz import norm_sq, symbolic_u

for n in (2, 4, 8):
    u = symbolic_u(n)
    H = build_hurwitz(n, u)
    ok = (H @ H.T).is_scalar_multiple_of_identity(norm_sq(u))
    print(f"H_{n}: first row {[str(x) for x in H.row(0)]}")
    print(f"      H H^t = |u|^2 I holds symbolically: {ok}")
    if n > 2:
        print(f"      {len(clifford_factors(n))} anticommuting factors with square -I")

# Sixteen squares do not compose: at most 8 anticommuting complex structures
# exist on R^16, but H_16 would need 15.
try:
    build_hurwitz(16, symbolic_u(16))
except HurwitzDoublingError as exc:
    print(f"H_16: {exc}")
