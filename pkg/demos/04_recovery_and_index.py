"""Working backwards from F: recover atom masses of the underlying measure
by a contour integral pushed to the real axis, count negative eigenvalues
of the Hermitian test matrix (zero for measures with nonnegative mass), and
watch the tapered kernel sum converge to its measure-side value.
"""

import math

import numpy as np

from fspair import make_meyer, make_poisson
from fspair.nevanlinna import (
    bridge_rhs,
    bridge_sum,
    build_model,
    neg_index,
    nev_matrix,
    recover_measure_extrapolated,
)

poisson = build_model(make_poisson())
vals, ext = recover_measure_extrapolated(poisson, 0.5, 1.5)
print("Recover the unit atom at t = 1 of the Poisson comb (target 1/2 / (1+1) = 0.25):")
for s, v in zip((1e-1, 1e-2, 1e-3), vals):
    print(f"  s = {s:<6} contour value {v:.8f}")
print(f"  extrapolated to s = 0: {ext:.8f}")

meyer = build_model(make_meyer(2000))
_, ext = recover_measure_extrapolated(meyer, 0.4, 0.6)
print()
print("Meyer atom at t = 1/2, weight -3 (target -3/2 / (1+1/4)^2 = -0.96):")
print(f"  extrapolated: {ext:.6f}")

print()
print("Negative index of the Nevanlinna test matrix on random point sets")
print("(nonnegative measure with k = 0: always zero):")
rng = np.random.default_rng(0)
for trial in range(5):
    n = int(rng.integers(3, 8))
    pts = [complex(x, y) for x, y in zip(rng.uniform(-2, 2, n),
                                         rng.uniform(0.3, 3.0, n))]
    print(f"  {n} points: neg_index = {neg_index(nev_matrix(poisson, pts))}")

print()
print("Bridge sum vs measure integral, Poisson comb, k = 0, w = z = 2i")
print("(exact value (1/2 pi i)(pi/2) coth(2 pi)):")
pair = make_poisson(600, 600)
oracle = (math.pi / 2.0) / math.tanh(2.0 * math.pi) / (2j * math.pi)
print(f"  rhs (truncated measure): {bridge_rhs(pair, 0, 2j, 2j):.10f}")
for T in (32, 64, 128, 256, 512):
    s = bridge_sum(pair, 0, 2j, 2j, T)
    print(f"  T = {T:>4}: sum = {s:.12f}   |sum - exact| = {abs(s - oracle):.2e}")
