"""Products of Wigner D functions expand in Clebsch-Gordan coefficients.

Run: python3 demos/bispherical_product.py
"""
import math

from hurwitzmaps.bispherical import clebsch_gordan, verify_bispherical_product

print("<1 0; 1 0 | 2 0> =", round(clebsch_gordan(1, 0, 1, 0, 2, 0), 12), " sqrt(2/3) =", round(math.sqrt(2 / 3), 12))
print("<1 0; 1 0 | 0 0> =", round(clebsch_gordan(1, 0, 1, 0, 0, 0), 12), " -1/sqrt(3) =", round(-1 / math.sqrt(3), 12))

for l1 in range(3):
    for l2 in range(3):
        rep = verify_bispherical_product(l1, l2, trials=10)
        print(f"l1={l1} l2={l2}: max residual {rep.max_residual:.2e}  passed {rep.passed}")
