"""Angle coordinates on R^4 and R^8 that land on ordinary spherical coordinates.

Run: python3 demos/angles_r8.py
"""
import numpy as np

from hurwitzmaps.param import (
    R4_ANGLES,
    R8_ANGLES,
    apply_map_float,
    cayley_klein,
    cayley_klein_target,
    param_r8,
    random_angle_set,
    spherical_target,
)

rng = np.random.default_rng(7)

a = random_angle_set(rng, R4_ANGLES)
u = cayley_klein(a)
for side in ("left", "right"):
    x = apply_map_float(3, side, u)
    print(f"R^4 -> R^3 {side:5s} x = {np.round(x, 6)}  error {np.abs(x - cayley_klein_target(a, side)).max():.2e}")

a = random_angle_set(rng, R8_ANGLES)
u = param_r8(a)
x = apply_map_float(5, "left", u)
print(f"R^8 -> R^5       |u|^2 = {u @ u:.6f} (r = {a.r:.6f})")
print(f"                 error against spherical coordinates {np.abs(x - spherical_target(a)).max():.2e}")

# The literal phase convention misses the target.
x_literal = apply_map_float(5, "left", param_r8(a, literal=True))
print(f"literal reading  error {np.abs(x_literal - spherical_target(a)).max():.2e}")
