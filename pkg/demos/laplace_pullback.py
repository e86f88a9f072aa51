"""Pulling a Laplacian back through a quadratic map.

For x = X(u) of degree 2 the chain rule gives
    Lap_u (f o X) = 4 |u|^2 (Lap_x f) o X,
because the Jacobian rows are orthogonal with squared length 4|u|^2 and each
component is harmonic.  The check below is exact over the rationals.

Run: python3 demos/laplace_pullback.py
"""
from hurwitzmaps import MultiPoly, quadratic_map, verify_factorization
from hurwitzmaps.exactnum import variables
from hurwitzmaps.laplace import corrupt_map

names = variables("x", 5)
x = [MultiPoly.var(v, names) for v in names]
f = x[0] * x[0] * x[1] + x[2] * x[3] * x[4]

for side in ("left", "right"):
    rep = verify_factorization(5, side, f)
    print(f"n=5 {side:5s}  f = {f}  residual zero: {rep.passed}  ({len(rep.lhs)} terms on each side)")

# Flip one coefficient of the map and the identity breaks.
names3 = variables("x", 3)
y = [MultiPoly.var(v, names3) for v in names3]
bad = corrupt_map(quadratic_map(3, "right"))
rep = verify_factorization(3, "right", y[0] * y[1], qmap=bad)
print(f"corrupted map: residual zero: {rep.passed}; residual = {rep.residual}")
