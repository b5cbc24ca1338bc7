"""Verify the summation identity  integral(phihat d mu) = sum a(l) phi(l)
for each built-in pair against smooth compactly supported test functions,
plus the Gaussian diagnostic on the Poisson comb (the theta functional
equation in disguise).
"""

import math

from fspair import make_guinand, make_meyer, make_poisson, verify_pair
from fspair.testfn import TestFunctionSpec

pairs = [
    (make_poisson(), TestFunctionSpec("bump", 5.3)),
    (make_poisson(), TestFunctionSpec("plateau", 3.1, 0.4)),
    (make_guinand(1.0 / 9.0, 512), TestFunctionSpec("bump", 4.0)),
    (make_meyer(2000), TestFunctionSpec("bump", 6.0)),
]

print("pair                  testfn    scale  residual     runtime")
for pair, spec in pairs:
    rep = verify_pair(pair, spec, 1e-10)
    print(f"{pair.name:<21} {spec.kind:<9} {spec.scale:<6} "
          f"{rep.abs_residual:.3e}    {rep.runtime_ms} ms")

print()
print("Gaussian diagnostic on the Poisson comb (both sides converge")
print("absolutely, so the non-compact Gaussian is admitted):")
for t in (0.5, 1.0, 2.0):
    rep = verify_pair(make_poisson(), TestFunctionSpec("gaussian_diag", t ** -0.5), 1e-13)
    theta = sum(math.exp(-math.pi * t * n * n) for n in range(-60, 61))
    print(f"  t = {t}: lhs = {rep.lhs.real:.12f}, "
          f"theta sum = {theta:.12f}, residual = {rep.abs_residual:.2e}")
