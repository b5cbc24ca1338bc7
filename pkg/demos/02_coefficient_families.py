"""The eta-quotient coefficient family alpha_{n,c} and the sum-of-three-
squares function r3(n): expansions, the theta specialization at c = 0, and
the measured growth constant behind the self-dual Guinand measures.
"""

import numpy as np

from fspair.qseries import guinand_coeffs, r3_sequence, theta_coeffs

print("alpha_{n,c} for a few c (rows n = 0..6):")
for c in (0.0, 1.0 / 12.0, 1.0 / 9.0, 0.125):
    alpha = guinand_coeffs(c, 6).coeffs
    row = "  ".join(f"{a:+9.5f}" for a in alpha)
    print(f"  c = {c:<12.6g} {row}")

print()
print("c = 0 collapses to the theta series (coefficient 2 at positive squares):")
diff = np.max(np.abs(guinand_coeffs(0.0, 256).coeffs - theta_coeffs(256).coeffs))
print(f"  max |alpha_n,0 - theta_n| over n <= 256: {diff:.2e}")

print()
print("Measured growth: K = max_n |alpha_n| / (n+1)^(1/4) over c in [0, 1/8]")
n = np.arange(513, dtype=float)
K = max(float(np.max(np.abs(guinand_coeffs(float(c), 512).coeffs) / (n + 1) ** 0.25))
        for c in np.linspace(0.0, 0.125, 20))
print(f"  K = {K:.4f}  (square-root-cancellation scale, uniformly bounded)")

print()
r3 = r3_sequence(10_000).values
print("r3(n) for n = 0..15:", [int(v) for v in r3[:16]])
print("zero exactly on n = 4^a (8b+7); r3(4n) = r3(n).")
for x in (100, 1000, 10_000):
    total = float(np.sum(r3[: x + 1]))
    main = 4.0 / 3.0 * np.pi * x ** 1.5
    print(f"  sum r3(n), n <= {x:>6}: {total:>12.0f}   "
          f"(4/3) pi x^(3/2) = {main:>12.0f}   ratio {total / main:.6f}")
