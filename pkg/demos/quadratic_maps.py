"""The quadratic maps R^{2(n-1)} -> R^n and their link to the scaled Cayley transform.

Run: python3 demos/quadratic_maps.py
"""
from fractions import Fraction

from hurwitzmaps import cayley_transform, quadratic_map

for n in (3, 5, 9):
    for side in ("left", "right"):
        m = quadratic_map(n, side)
        print(f"n={n} {side:5s}  sum x^2 - |u|^4 = {m.norm_composition_residual()}")

# The right map of R^4 -> R^3 spelled out.
m = quadratic_map(3, "right")
for i, c in enumerate(m.components, 1):
    print(f"  x{i} = {c}")

# Evaluated at a rational point the map is the last column of r^2 O_3(u).
u = [Fraction(1), Fraction(-2, 3), Fraction(5, 2), Fraction(1, 7)]
O = cayley_transform(3, u).matrix
print("map value        ", [str(v) for v in m(u)])
print("last column of O ", [str(v) for v in O.column(2)])
