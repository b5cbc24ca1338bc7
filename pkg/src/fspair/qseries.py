"""Truncated power series over float64, Euler/theta expansions, the
eta-quotient coefficient family alpha_{n,c}, and the sum-of-three-squares
counting function r3(n).

All series are formal expansions in q, truncated hard at a fixed order
n_max; a fractional leading power of q is tracked separately in
``leading_exponent`` so the coefficient arrays stay integer-indexed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TruncatedPowerSeries",
    "R3Table",
    "euler_coeffs",
    "series_mul",
    "series_pow",
    "guinand_coeffs",
    "theta_coeffs",
    "r3_sequence",
]

GUINAND_C_MAX = 0.125


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Coefficients of  q^leading_exponent * sum_n coeffs[n] q^n,  n <= n_max."""

    leading_exponent: float
    coeffs: np.ndarray
    n_max: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if c.shape != (self.n_max + 1,):
            raise ValueError("coeffs must have length n_max+1")

    def dilate(self, d: int) -> "TruncatedPowerSeries":
        """Substitute q -> q^d, truncated at the same n_max."""
        if d < 1:
            raise ValueError("dilation factor must be >= 1")
        out = np.zeros(self.n_max + 1)
        top = self.n_max // d
        out[:: d] = self.coeffs[: top + 1][: len(out[::d])]
        return TruncatedPowerSeries(self.leading_exponent * d, out, self.n_max)


@dataclass(frozen=True)
class R3Table:
    """values[n] = r3(n), the number of integer triples with |m|^2 = n."""

    values: np.ndarray
    n_max: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        object.__setattr__(self, "values", v)
        if v.shape != (self.n_max + 1,):
            raise ValueError("values must have length n_max+1")


def euler_coeffs(n_max: int) -> TruncatedPowerSeries:
    """Coefficients of prod_{n>=1} (1 - q^n) via the pentagonal number theorem.

    The coefficients are exact integers (-1, 0, 1) stored as floats.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    c = np.zeros(n_max + 1)
    c[0] = 1.0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n_max and g2 > n_max:
            break
        s = 1.0 if k % 2 == 0 else -1.0
        if g1 <= n_max:
            c[g1] += s
        if g2 <= n_max:
            c[g2] += s
        k += 1
    return TruncatedPowerSeries(0.0, c, n_max)


def series_mul(a: TruncatedPowerSeries, b: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """Truncated Cauchy product; never extends past the common n_max."""
    if a.n_max != b.n_max:
        raise ValueError("series orders differ")
    n = a.n_max
    out = np.convolve(a.coeffs, b.coeffs)[: n + 1]
    return TruncatedPowerSeries(a.leading_exponent + b.leading_exponent, out, n)


def series_pow(s: TruncatedPowerSeries, e: float) -> TruncatedPowerSeries:
    """s**e for real e, requiring s.coeffs[0] == 1.

    Uses the standard differentiate-convolve-integrate recurrence for
    exp(e log s): stable and O(n_max^2).
    """
    if abs(s.coeffs[0] - 1.0) > 1e-12:
        raise ValueError("series_pow requires a series with constant term 1")
    n = s.n_max
    f = np.zeros(n + 1)
    f[0] = 1.0
    sc = s.coeffs
    j = np.arange(n + 1, dtype=float)
    js = j * sc  # j * s_j
    for m in range(1, n + 1):
        # m f_m = e sum_{j=1..m} j s_j f_{m-j} - sum_{j=1..m-1} j f_j s_{m-j}
        t1 = np.dot(js[1 : m + 1], f[m - 1 :: -1][: m])
        t2 = np.dot(j[1:m] * f[1:m], sc[m - 1 : 0 : -1]) if m > 1 else 0.0
        f[m] = (e * t1 - t2) / m
    return TruncatedPowerSeries(s.leading_exponent * e, f, n)


def theta_coeffs(n_max: int) -> TruncatedPowerSeries:
    """Coefficients of sum_{m in Z} q^{m^2}, by direct enumeration of m."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    c = np.zeros(n_max + 1)
    c[0] = 1.0
    m = 1
    while m * m <= n_max:
        c[m * m] = 2.0
        m += 1
    return TruncatedPowerSeries(0.0, c, n_max)


def guinand_coeffs(c: float, n_max: int) -> TruncatedPowerSeries:
    """alpha_{0..n_max, c} of the self-dual eta quotient family, with
    leading_exponent = c.

    The quotient combines three Euler products (arguments q, q^2, q^4)
    raised to the real exponents 24c-2 and -(48c-5); the fractional
    prefactors combine to q^c exactly, so only integer powers are expanded.
    Outside c in [0, 1/8] the coefficients grow exponentially and the
    construction is rejected.
    """
    if not (0.0 <= c <= GUINAND_C_MAX + 1e-15):
        raise ValueError("c must lie in [0, 1/8]")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    a = 24.0 * c - 2.0
    b = 48.0 * c - 5.0
    # multiply one (1 - q^d)^e factor at a time; the coefficients up to
    # order n are final after step n, so large transient coefficients in
    # the unconverged high orders never contaminate the result (forming
    # the three full Euler-product powers first and multiplying them
    # loses everything to cancellation near c = 0)
    out = np.zeros(n_max + 1)
    out[0] = 1.0
    for n in range(1, n_max + 1):
        for d, e in ((n, a), (2 * n, -b), (4 * n, a)):
            if d > n_max:
                continue
            k_top = n_max // d
            binom = np.zeros(k_top + 1)
            binom[0] = 1.0
            for k in range(1, k_top + 1):  # (1 - x)^e binomial series
                binom[k] = binom[k - 1] * (k - 1 - e) / k
            new = np.zeros(n_max + 1)
            for k in range(k_top + 1):
                new[k * d:] += binom[k] * out[: n_max + 1 - k * d]
            out = new
    return TruncatedPowerSeries(c, out, n_max)


def r3_sequence(n_max: int) -> R3Table:
    """r3(n) for 0 <= n <= n_max by enumerating integer triples with |m|^2 <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    m = math.isqrt(n_max)
    axis = np.arange(-m, m + 1, dtype=np.int64)
    sq = axis * axis
    # pair up two coordinates first to keep the peak array size at O(n_max)
    pair = np.bincount((sq[:, None] + sq[None, :]).ravel(), minlength=n_max + 1)[: n_max + 1]
    counts = np.zeros(n_max + 1, dtype=np.int64)
    for s in sq[m:]:  # distinct squares 0, 1, 4, ...
        mult = 1 if s == 0 else 2
        room = n_max - s
        if room < 0:
            break
        counts[s:] += mult * pair[: room + 1]
    return R3Table(counts, n_max)
