"""Auxiliary kernels used on the Nevanlinna side.

Contains the polynomial family r_k extracted from the generating series
exp((1 - sqrt(1-q)) X) / sqrt(1-q), the iterated-convolution kernels
A_k(x) = e^{-2 pi |x|} pi^{1-k} r_{k-1}(2 pi |x|), the half-plane kernels
G_k and their Fourier transforms, and the Fejer-type taper S_k whose
Fourier transform is a normalized central B-spline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qseries import TruncatedPowerSeries, series_mul, series_pow

__all__ = [
    "RPolynomial",
    "KernelPoint",
    "r_poly",
    "b_coeffs",
    "eval_A",
    "eval_S",
    "eval_Shat",
    "bspline_value",
    "eval_Ghat",
    "eval_G",
    "pf_identity_residual",
]

R_POLY_K_CAP = 16
EPS_SING = 1e-6  # exclusion radius around z = i for the k >= 1 closed form


@dataclass(frozen=True)
class RPolynomial:
    """r_k as coefficient array; coeffs[j] multiplies X^j."""

    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.k + 1,):
            raise ValueError("coefficient count must be k+1")
        if c[self.k] == 0.0:
            raise ValueError("degree must be exactly k")

    def __call__(self, x):
        return np.polyval(self.coeffs[::-1], x)


@dataclass(frozen=True)
class KernelPoint:
    """An evaluated kernel sample at upper-half-plane arguments (w, z)."""

    w: complex
    z: complex
    value: complex

    def __post_init__(self):
        if self.w.imag <= 0 or self.z.imag <= 0:
            raise ValueError("w and z must lie in the upper half-plane")


def _check_upper(w: complex, z: complex) -> None:
    if w.imag <= 0 or z.imag <= 0:
        raise ValueError("w and z must lie in the upper half-plane")


@lru_cache(maxsize=None)
def r_poly(k: int) -> RPolynomial:
    """Extract r_k from the generating series by truncated composition in q.

    The coefficient of X^m in r_k is the q^k coefficient of
    u(q)^m / m! * (1-q)^{-1/2} with u = 1 - sqrt(1-q).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > R_POLY_K_CAP:
        raise ValueError(f"k is capped at {R_POLY_K_CAP}")
    one_minus_q = np.zeros(k + 1)
    one_minus_q[0] = 1.0
    if k >= 1:
        one_minus_q[1] = -1.0
    base = TruncatedPowerSeries(0.0, one_minus_q, k)
    sqrt_s = series_pow(base, 0.5)
    u = TruncatedPowerSeries(0.0, -sqrt_s.coeffs + (np.arange(k + 1) == 0), k)
    v = series_pow(base, -0.5)
    coeffs = np.zeros(k + 1)
    acc = v  # u^m / m! * v, built iteratively
    coeffs[0] = acc.coeffs[k]
    um = TruncatedPowerSeries(0.0, (np.arange(k + 1) == 0).astype(float), k)
    for m in range(1, k + 1):
        um = series_mul(um, u)
        coeffs[m] = np.convolve(um.coeffs, v.coeffs)[k] / math.factorial(m)
    return RPolynomial(k, coeffs)


@lru_cache(maxsize=None)
def b_coeffs(k: int) -> tuple:
    """Coefficients b_{k-1,j} of p_{k-1}(x) = pi^{1-k} r_{k-1}(2 pi x), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = r_poly(k - 1)
    pref = math.pi ** (1 - k)
    return tuple(pref * (2.0 * math.pi) ** j * r.coeffs[j] for j in range(k))


def eval_A(k: int, x: float) -> float:
    """The k-fold convolution power of e^{-2 pi |.|}, in closed form."""
    if k < 1:
        raise ValueError("A_k is defined for k >= 1 only")
    ax = abs(x)
    r = r_poly(k - 1)
    return math.exp(-2.0 * math.pi * ax) * math.pi ** (1 - k) * float(r(2.0 * math.pi * ax))


def bspline_value(n: int, t: float) -> float:
    """Central B-spline M_n(t): the n-fold convolution of 1_{[-1/2,1/2]}.

    Evaluated by the Cox-de Boor style recurrence
    M_n(t) = ((n/2 + t) M_{n-1}(t + 1/2) + (n/2 - t) M_{n-1}(t - 1/2)) / (n - 1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if abs(t) >= n / 2.0 and not (n == 1 and abs(t) == 0.5):
        return 0.0
    if n == 1:
        # midpoint convention at the jump keeps the recurrence exact at knots
        return 0.5 if abs(t) == 0.5 else 1.0
    return ((n / 2.0 + t) * bspline_value(n - 1, t + 0.5)
            + (n / 2.0 - t) * bspline_value(n - 1, t - 0.5)) / (n - 1)


@lru_cache(maxsize=None)
def _vk(k: int) -> float:
    return bspline_value(2 * (k + 1), 0.0)


def eval_S(k: int, x: float) -> float:
    """S_k(x) = (sin(pi x)/(pi x))^{2(k+1)} / v_k, with S_k(0) = 1/v_k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if x == 0.0:
        return 1.0 / _vk(k)
    s = math.sin(math.pi * x) / (math.pi * x)
    return s ** (2 * (k + 1)) / _vk(k)


def eval_Shat(k: int, t: float) -> float:
    """Fourier transform of S_k: the order-2(k+1) central B-spline, normalized
    so that eval_Shat(k, 0) = 1.  Vanishes outside [-(k+1), k+1]."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return bspline_value(2 * (k + 1), t) / _vk(k)


def eval_Ghat(k: int, w: complex, z: complex, t: float) -> complex:
    """Fourier transform (in the last variable) of G_k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_upper(w, z)
    return 1.0 / (2.0 * math.pi ** (k + 1) * 1j * (t - z) * (t - w.conjugate())
                  * (1.0 + t * t) ** k)


def _G_nonneg(k: int, w: complex, z: complex, lam: float) -> complex:
    """Closed form of G_k(w, z, lam) for lam >= 0."""
    wb = w.conjugate()
    if k == 0:
        return cmath.exp(2j * math.pi * z * lam) / (z - wb)
    b = b_coeffs(k)
    two_pi = 2.0 * math.pi
    decay = math.exp(-two_pi * lam)

    def inner(zz: complex) -> complex:
        total = 0.0 + 0.0j
        for j in range(k):
            pref = math.factorial(j) * b[j] / (two_pi ** (j + 1) * (1.0 + 1j * zz) ** (j + 1))
            s = 0.0 + 0.0j
            term = 1.0 + 0.0j
            for l in range(j + 1):
                if l > 0:
                    term *= two_pi * lam * (1.0 + 1j * zz) / l
                s += term
            total += pref * s
        return total

    t1 = decay * inner(wb)
    t2 = decay * inner(z)
    t3 = cmath.exp(2j * math.pi * lam * z) / (math.pi ** k * (1.0 + z * z) ** k)
    return (t1 - t2 + t3) / (z - wb)


def eval_G(k: int, w: complex, z: complex, lam: float) -> complex:
    """The kernel G_k(w, z, lam); for lam < 0 via the antisymmetry
    G_k(w, z, -lam) = -conj(G_k(z, w, lam))."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_upper(w, z)
    if k >= 1 and (abs(z - 1j) < EPS_SING or abs(w - 1j) < EPS_SING):
        raise ValueError("arguments too close to i for the k >= 1 closed form")
    if lam >= 0:
        return _G_nonneg(k, w, z, lam)
    return -_G_nonneg(k, z, w, -lam).conjugate()


def pf_identity_residual(k: int, z: complex) -> float:
    """Residual of the partial-fraction identity
    sum_j j! b_{k-1,j} / (2 pi)^{j+1} [(1+iz)^{-(j+1)} + (1-iz)^{-(j+1)}]
      = pi^{-k} (1+z^2)^{-k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if abs(z - 1j) < 1e-12 or abs(z + 1j) < 1e-12:
        raise ValueError("z = +-i is excluded")
    b = b_coeffs(k)
    two_pi = 2.0 * math.pi
    lhs = 0.0 + 0.0j
    for j in range(k):
        lhs += (math.factorial(j) * b[j] / two_pi ** (j + 1)
                * ((1.0 + 1j * z) ** (-(j + 1)) + (1.0 - 1j * z) ** (-(j + 1))))
    rhs = 1.0 / (math.pi ** k * (1.0 + z * z) ** k)
    return abs(lhs - rhs)
