"""Holomorphic side of the summation-pair correspondence.

Evaluates F from the exponential-series side and from the
measure-integral (Nevanlinna) side, fits the real polynomial Q joining
the two, computes line-average (Bohr) coefficients, recovers the measure
by contour inversion near the real axis, assembles Hermitian test
matrices with a cyclic Jacobi eigensolver for the negative-index count,
and realizes the tapered kernel sum that bridges the two representations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .kernels import eval_G, eval_Shat
from .measures import FSPair, IntegrationResult, TemperedMeasure, _adaptive_simpson, _fixed_quad

__all__ = [
    "HolomorphicModel",
    "NevMatrix",
    "f_series",
    "f_integral",
    "fit_q",
    "build_model",
    "ef_coeff",
    "recover_measure",
    "recover_measure_extrapolated",
    "nev_matrix",
    "neg_index",
    "jacobi_eigenvalues",
    "bridge_sum",
    "bridge_rhs",
    "ap_proxy",
]

_EF_DROP = 1e-18   # relative cutoff for exponentially dead series terms
_MIN_POINT_SEP = 1e-8
DEFAULT_NEG_TOL = 1e-9


# ----------------------------------------------------------------- series side

def _series_terms(pair: FSPair, y: float):
    """Positive-frequency coefficients that survive the e^{-2 pi l y} decay."""
    lam = pair.a.lambdas
    pos = lam > 0
    lam, v = lam[pos], pair.a.values[pos]
    damp = np.abs(v) * np.exp(-2.0 * math.pi * lam * y)
    keep = damp > _EF_DROP * max(1.0, float(np.max(damp)) if len(damp) else 1.0)
    return lam[keep], v[keep]


def f_series(pair: FSPair, z: complex, with_error: bool = False):
    """a(0)/2 + sum_{l > 0} a(l) e^{2 pi i l z}, trusted for Im z above the
    strip constant.  With with_error, also returns a truncation tail bound
    derived from the declared growth constant."""
    z = complex(z)
    if z.imag <= pair.strip_constant:
        raise ValueError("series representation requires Im z > strip_constant")
    lam, v = _series_terms(pair, z.imag)
    val = 0.5 * pair.a.value_at(0.0) + complex(np.sum(v * np.exp(2j * math.pi * lam * z)))
    if not with_error:
        return val
    c2 = pair.a.growth_constant
    lmax = pair.a.lambda_max
    # sum |a| e^{-c2 l} is declared finite; bound the truncated tail crudely by
    # the last retained magnitude continued at the worst admissible growth rate
    gap = 2.0 * math.pi * z.imag - c2
    tail = 0.0
    if gap > 0 and lmax > 0:
        tail = math.exp(-gap * lmax) / gap
    return val, tail


def _f_series_grid(pair: FSPair, x: np.ndarray, y: float,
                   n_terms: Optional[int] = None) -> np.ndarray:
    """Vectorized series evaluation on a horizontal line x + iy."""
    lam = pair.a.lambdas
    pos = lam > 0
    lam, v = lam[pos], pair.a.values[pos]
    if n_terms is not None:
        lam, v = lam[:n_terms], v[:n_terms]
    coef = v * np.exp(-2.0 * math.pi * lam * y)
    keep = np.abs(coef) > _EF_DROP
    lam, coef = lam[keep], coef[keep]
    out = np.full(x.shape, 0.5 * pair.a.value_at(0.0), dtype=complex)
    for l, c in zip(lam, coef):
        out += c * np.exp(2j * math.pi * l * x)
    return out


# --------------------------------------------------------------- integral side

class HolomorphicModel:
    """A pair together with the index k and the fitted polynomial Q.

    q_poly holds real coefficients, lowest order first, degree <= 2k.
    """

    def __init__(self, pair: FSPair, k: int, q_poly: np.ndarray,
                 fit_residual: float = 0.0):
        q_poly = np.atleast_1d(np.asarray(q_poly, dtype=float))
        if len(q_poly) > 2 * k + 1:
            raise ValueError("Q must have degree <= 2k")
        self.pair = pair
        self.k = k
        self.q_poly = q_poly
        self.valid_strip = pair.strip_constant
        self.fit_residual = fit_residual
        mu = pair.mu
        self._t = mu.atom_locations
        self._w = mu.atom_weights
        self._denom = (1.0 + self._t ** 2) ** (k + 1)

    def q_at(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.q_poly))

    def integral_part(self, z: complex, tol: float = 1e-10) -> complex:
        """(z^2+1)^k/(2 pi i) * integral (1+tz)/(t-z) dmu(t)/(1+t^2)^{k+1}."""
        z = complex(z)
        if z.imag <= 0:
            raise ValueError("integral representation requires Im z > 0")
        atom = np.sum(self._w * (1.0 + self._t * z) / ((self._t - z) * self._denom))
        total = complex(atom)
        mu = self.pair.mu
        if mu.density is not None:
            T = mu.truncation_radius or 50.0
            val, _, _ = _adaptive_simpson(
                lambda t: complex(mu.density(t)) * (1.0 + t * z)
                / ((t - z) * (1.0 + t * t) ** (self.k + 1)),
                -T, T, tol)
            total += val
        return (z * z + 1.0) ** self.k / (2j * math.pi) * total

    def truncation_error_estimate(self, z: complex) -> float:
        """Heuristic bound for the discarded |t| > T part of the integral."""
        T = self.pair.mu.truncation_radius
        if T <= 1.0:
            return 0.0
        loc = np.abs(self._t)
        outer = loc >= T / 2.0
        rate = float(np.sum(np.abs(self._w[outer]))) / max(T, 1.0)
        k = self.k
        return (abs(z * z + 1.0) ** k * (1.0 + abs(z)) * rate
                * T ** (-(2 * k + 1)) / (math.pi * (2 * k + 1)))


def f_integral(model: HolomorphicModel, z: complex, tol: float = 1e-10) -> complex:
    """The Nevanlinna-side value, valid on the whole upper half-plane."""
    return model.integral_part(z, tol) + 1j * model.q_at(z)


def fit_q(pair: FSPair, k: int, sample: Sequence[complex],
          quad_tol: float = 1e-10):
    """Least-squares fit of the real polynomial Q (degree <= 2k) that makes
    the integral side match the series side on the given strip sample.

    Returns (coefficients lowest-first, rms residual).  Raises if the
    sample is too small or clustered, or if the residual exceeds ten times
    the combined series/quadrature/truncation error estimate (which signals
    a wrong k or a bad truncation).
    """
    sample = [complex(z) for z in sample]
    if len(sample) < 4 * k + 4:
        raise ValueError("need at least 4k+4 sample points")
    for z in sample:
        if z.imag <= pair.strip_constant:
            raise ValueError("sample points must lie in the trusted strip")
    probe = HolomorphicModel(pair, k, np.zeros(1))
    targets = []
    errs = []
    for z in sample:
        s, stail = f_series(pair, z, with_error=True)
        targets.append(s - probe.integral_part(z, quad_tol))
        errs.append(stail + quad_tol + probe.truncation_error_estimate(z))
    targets = np.array(targets)
    deg = 2 * k
    zs = np.array(sample)
    # i * Q(z) = target: split into real equations for the real coefficients
    powers = np.vstack([zs ** m for m in range(deg + 1)]).T
    design = np.vstack([-powers.imag, powers.real])
    rhs = np.concatenate([targets.real, targets.imag])
    coef, _, rank, sv = np.linalg.lstsq(design, rhs, rcond=None)
    if rank < deg + 1 or sv[-1] < 1e-10 * sv[0]:
        raise RuntimeError("ill-conditioned fit: sample points too clustered")
    resid = rhs - design @ coef
    rms = math.sqrt(float(np.mean(resid ** 2)) * 2.0)
    allowance = 10.0 * max(float(np.mean(errs)), 1e-14)
    if rms > allowance:
        raise RuntimeError(
            f"fit residual {rms:.2e} exceeds 10x error estimate {allowance:.2e}; "
            "wrong k or truncation too small")
    return coef, rms


def default_k(pair: FSPair) -> int:
    """Smallest k with 2(k+1) >= the declared degree bound."""
    return max(0, math.ceil(pair.mu.degree_bound / 2.0) - 1)


def build_model(pair: FSPair, k: Optional[int] = None,
                sample: Optional[Sequence[complex]] = None,
                quad_tol: float = 1e-10) -> HolomorphicModel:
    """Fit Q on a default strip sample and return the evaluator model."""
    if k is None:
        k = default_k(pair)
    if sample is None:
        y0 = pair.strip_constant
        n = 4 * k + 8
        xs = np.linspace(-1.5, 1.5, n)
        ys = y0 + 0.5 + 0.8 * np.abs(np.sin(7.0 * np.arange(n)))
        sample = [complex(x, y) for x, y in zip(xs, ys)]
    coef, rms = fit_q(pair, k, sample, quad_tol)
    return HolomorphicModel(pair, k, coef, rms)


# ------------------------------------------------------- Bohr-type coefficients

def ef_coeff(pair_or_model, lam: float, y: float, T: float) -> complex:
    """(1/2T) integral_{-T}^{T} F(x+iy) e^{-2 pi i lam (x+iy)} dx with
    oscillation-aware panel quadrature; F from the series side."""
    pair = pair_or_model.pair if isinstance(pair_or_model, HolomorphicModel) else pair_or_model
    if y <= pair.strip_constant:
        raise ValueError("y must exceed the strip constant")
    if T <= 0:
        raise ValueError("T must be positive")
    lam_max = pair.a.lambda_max
    width = 1.0 / (4.0 * (abs(lam) + lam_max)) if lam_max + abs(lam) > 0 else 0.25
    panels = max(8, int(math.ceil(2.0 * T / width)))
    nodes, weights = np.polynomial.legendre.leggauss(8)
    edges = np.linspace(-T, T, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    h = 0.5 * (edges[1] - edges[0])
    x = (mid[:, None] + h * nodes[None, :]).ravel()
    fvals = _f_series_grid(pair, x, y)
    integrand = fvals * np.exp(-2j * math.pi * lam * (x + 1j * y))
    total = h * np.sum(integrand.reshape(panels, 8) @ weights)
    return complex(total / (2.0 * T))


# ------------------------------------------------------------- measure recovery

def recover_measure(model: HolomorphicModel, a: float, b: float, s: float,
                    tol: float = 1e-7) -> float:
    """Re integral_{a+is}^{b+is} (F(z) - iQ(z)) / (z^2+1)^{k+1} dz; as s drops
    to zero this converges to (1/2) integral_a^b dmu(t)/(1+t^2)^{k+1}.

    The k+1 contour exponent is forced by the target normalization: a unit
    atom at t0 contributes exactly 1/(2 (1+t0^2)^{k+1}) in the limit."""
    if not a < b:
        raise ValueError("need a < b")
    if not 0.0 < s <= 0.1:
        raise ValueError("s must lie in (0, 0.1]")
    loc = model.pair.mu.atom_locations
    for endpoint in (a, b):
        if len(loc) and np.min(np.abs(loc - endpoint)) < 1e-3:
            raise ValueError(f"endpoint {endpoint} is within 1e-3 of an atom")
    k = model.k

    def integrand(x):
        z = complex(x, s)
        return model.integral_part(z, tol) / (z * z + 1.0) ** (k + 1)

    val, _, _ = _adaptive_simpson(integrand, a, b, tol)
    return float(val.real)


def recover_measure_extrapolated(model: HolomorphicModel, a: float, b: float,
                                 s_list: Sequence[float] = (1e-1, 1e-2, 1e-3),
                                 tol: float = 1e-7):
    """Values at each contour height plus their polynomial extrapolation to
    s = 0 (the limit itself is not quantified; the sequence is reported)."""
    s_list = list(s_list)
    vals = [recover_measure(model, a, b, s, tol) for s in s_list]
    coeffs = np.polyfit(np.array(s_list), np.array(vals), len(s_list) - 1)
    return vals, float(np.polyval(coeffs, 0.0))


# ----------------------------------------------------------- Nevanlinna matrix

@dataclass(frozen=True)
class NevMatrix:
    points: tuple
    entries: np.ndarray


def nev_matrix(model: HolomorphicModel, points: Sequence[complex],
               tol: float = 1e-10) -> NevMatrix:
    """Hermitian test matrix i (F(z_n) + conj F(z_m)) / (z_n - conj z_m)."""
    pts = [complex(z) for z in points]
    for z in pts:
        if z.imag <= 0:
            raise ValueError("points must lie in the upper half-plane")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) < _MIN_POINT_SEP:
                raise ValueError("near-duplicate points inflate the condition number")
    fv = np.array([f_integral(model, z, tol) for z in pts])
    zs = np.array(pts)
    num = 1j * (fv[:, None] + fv[None, :].conjugate())
    den = zs[:, None] - zs[None, :].conjugate()
    return NevMatrix(tuple(pts), num / den)


def jacobi_eigenvalues(H: np.ndarray, off_tol: float = 1e-14,
                       max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    Each (p, q) step applies a phase to make the pivot real, then the
    classical real rotation.  Converged when the off-diagonal Frobenius
    mass drops below off_tol times the total."""
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return A.real.diagonal().copy()
    total = np.linalg.norm(A)
    if total == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = math.sqrt(max(np.linalg.norm(A) ** 2
                            - np.linalg.norm(np.diagonal(A)) ** 2, 0.0))
        if off <= off_tol * total:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                phase = apq / abs(apq)
                app, aqq = A[p, p].real, A[q, q].real
                tau = (aqq - app) / (2.0 * abs(apq))
                t = 1.0 if tau == 0.0 else math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                # columns: [p, q] <- [p, q] @ [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                jp = np.array([c, -s * phase.conjugate()])
                jq = np.array([s, c * phase.conjugate()])
                cp = A[:, p] * jp[0] + A[:, q] * jp[1]
                cq = A[:, p] * jq[0] + A[:, q] * jq[1]
                A[:, p], A[:, q] = cp, cq
                rp = A[p, :] * jp[0].conjugate() + A[q, :] * jp[1].conjugate()
                rq = A[p, :] * jq[0].conjugate() + A[q, :] * jq[1].conjugate()
                A[p, :], A[q, :] = rp, rq
    return np.sort(np.diagonal(A).real)


def neg_index(m: NevMatrix, tol_rel: float = DEFAULT_NEG_TOL) -> int:
    """Count eigenvalues below -tol_rel times the spectral norm estimate."""
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    eig = jacobi_eigenvalues(m.entries)
    if len(eig) == 0:
        return 0
    norm = float(np.max(np.abs(eig)))
    if norm == 0.0:
        return 0
    return int(np.sum(eig < -tol_rel * norm))


# ----------------------------------------------------------------- bridge sums

def bridge_sum(pair: FSPair, k: int, w: complex, z: complex, T: float) -> complex:
    """Tapered sum over the a-support: a(l) G_k(w,z,l) Shat_k(l/T)."""
    if T <= 0:
        raise ValueError("T must be positive")
    total = 0.0 + 0.0j
    cut = T * (k + 1)
    for lam, v in zip(pair.a.lambdas, pair.a.values):
        if abs(lam) > cut:
            continue
        taper = eval_Shat(k, lam / T)
        if taper == 0.0:
            continue
        total += v * eval_G(k, w, z, lam) * taper
    return total


def bridge_rhs(pair: FSPair, k: int, w: complex, z: complex,
               tol: float = 1e-10) -> complex:
    """(1/(2 pi^{k+1} i)) integral dmu(t) / ((t-z)(t-wbar)(1+t^2)^k)."""
    if w.imag <= 0 or z.imag <= 0:
        raise ValueError("w and z must lie in the upper half-plane")
    wb = w.conjugate()
    mu = pair.mu
    atoms = np.sum(mu.atom_weights / ((mu.atom_locations - z)
                                      * (mu.atom_locations - wb)
                                      * (1.0 + mu.atom_locations ** 2) ** k))
    total = complex(atoms)
    if mu.density is not None:
        T = mu.truncation_radius or 50.0
        val, _, _ = _adaptive_simpson(
            lambda t: complex(mu.density(t)) / ((t - z) * (t - wb) * (1.0 + t * t) ** k),
            -T, T, tol)
        total += val
    return total / (2.0 * math.pi ** (k + 1) * 1j)


# --------------------------------------------------------- almost-periodicity

def ap_proxy(pair: FSPair, y: float, trunc_list: Sequence[int],
             x_grid: Optional[np.ndarray] = None):
    """Sup over an x-grid of |series truncated to N terms - full series| at
    height y, for each N; a decreasing sequence is the proxy for the
    trigonometric-polynomial approximation property."""
    if y <= pair.strip_constant:
        raise ValueError("y must exceed the strip constant")
    if x_grid is None:
        x_grid = np.linspace(-10.0, 10.0, 1024)
    full = _f_series_grid(pair, x_grid, y)
    out = []
    for n in trunc_list:
        part = _f_series_grid(pair, x_grid, y, n_terms=int(n))
        out.append(float(np.max(np.abs(part - full))))
    return out
