"""The holomorphic function F of a summation pair has two faces: an
exponential series valid high in the upper half-plane and a Nevanlinna-type
measure integral valid everywhere above the real axis.  This demo fits the
joining polynomial Q, checks the two faces against each other and against
the cotangent closed form, and extracts line-average (Bohr) coefficients.
"""

import cmath
import math

import numpy as np

from fspair import make_meyer, make_poisson
from fspair.nevanlinna import ap_proxy, build_model, ef_coeff, f_integral, f_series

# generous measure truncation: the integral side's tail is O(|z| / t_max)
pair = make_poisson(t_max=200_000, lambda_max=64)
model = build_model(pair)
print(f"Poisson model: k = {model.k}, fitted Q = {model.q_poly}, "
      f"fit rms = {model.fit_residual:.2e}")
print()
print("z               series side           integral side         (i/2)cot(pi z)")
for z in (1j, 0.4 + 1.2j, -1.3 + 0.7j):
    s = f_series(pair, z)
    i = f_integral(model, z)
    c = 0.5j * cmath.cos(math.pi * z) / cmath.sin(math.pi * z)
    print(f"{z!s:<14}  {s:.12f}   {i:.12f}   {c:.12f}")

meyer = build_model(make_meyer(2000))
print()
print(f"Meyer model: k = {meyer.k}, fitted Q (degree <= 2k) = {meyer.q_poly}")

print()
print("Bohr coefficients of the Poisson F (limit is a(lam) for lam > 0,")
print("a(0)/2 at lam = 0, zero off the support and for negative lam):")
for lam in (0.0, 1.0, 2.0, 0.5, -1.0):
    v = ef_coeff(pair, lam, 1.0, 256.0)
    print(f"  lam = {lam:+.1f}: {v.real:+.8f} {v.imag:+.2e}i")

print()
print("Almost-periodicity proxy (sup distance to the N-term truncation):")
for N, v in zip((1, 2, 3, 4), ap_proxy(pair, 1.0, [1, 2, 3, 4])):
    print(f"  N = {N}: {v:.3e}   (geometric bound "
          f"{math.exp(-2 * math.pi * (N + 1)) / (1 - math.exp(-2 * math.pi)):.3e})")
