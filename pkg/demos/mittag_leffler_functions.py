"""Tour of the Mittag-Leffler family.

Evaluates the one-, two- and three-parameter functions, checks the
classical reductions numerically, and tabulates E_alpha(-t^alpha) to
show the stretched-relaxation profile that replaces the exponential in
fractional models.
"""

import math

import numpy as np

from abcfde import ml_one, ml_prabhakar, ml_two

print("classical reductions")
print("--------------------")
print(f"E_1(1)        = {ml_one(1.0, 1.0):.15f}   (e = {math.e:.15f})")
x = math.pi / 2.0
print(f"E_2,1(-x^2)   = {ml_two(2.0, 1.0, -(x * x)): .3e}   (cos(pi/2) = 0)")
print(f"E^1_0.5,1(z)  - E_0.5(z) = "
      f"{ml_prabhakar(0.5, 1.0, 1.0, -2.0) - ml_one(0.5, -2.0):.1e}")

print()
print("relaxation profiles E_alpha(-t^alpha)")
print("-------------------------------------")
ts = np.linspace(0.0, 4.0, 9)
header = "t      " + "  ".join(f"a={a:.1f}" for a in (0.3, 0.5, 0.7, 1.0))
print(header)
for t in ts:
    row = "  ".join(f"{ml_one(a, -(t**a)):.3f}" for a in (0.3, 0.5, 0.7, 1.0))
    print(f"{t:5.2f}  {row}")

print()
print("the alpha = 1 column is exp(-t); smaller alpha decays faster at")
print("short times and slower at long times, the hallmark of the kernel")
print("used by the nonsingular fractional derivative in this package.")
