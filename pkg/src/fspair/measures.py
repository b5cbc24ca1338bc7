"""Strongly tempered measures, summation functions and FS-pair builders.

A pair couples a truncated atomic-plus-density measure mu with a truncated
coefficient function a(.) so that  integral(phihat d mu) = sum a(l) phi(l)
for smooth compactly supported phi.  All infinite objects are truncated at
construction time; the truncation is recorded in ``truncation_note`` so
every downstream report can state it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .qseries import guinand_coeffs, r3_sequence

__all__ = [
    "Density",
    "TemperedMeasure",
    "SummationFunction",
    "FSPair",
    "IntegrationResult",
    "DegreeProbeReport",
    "PairSchemaError",
    "make_poisson",
    "make_guinand",
    "make_meyer",
    "make_empty",
    "load_pair",
    "antipodal_split",
    "degree_probe",
    "integrate_against",
    "meyer_chi",
]

ATOM_MERGE_EPS = 1e-12


class PairSchemaError(ValueError):
    """Raised when a pair file violates the JSON schema or a pair invariant."""


@dataclass(frozen=True)
class Density:
    """Absolutely continuous part: a kind tag plus an evaluator.

    kind "r_tanh_pi_r" is scale * r * tanh(pi r); kind "grid" interpolates
    linearly between the given samples and is zero outside their range.
    tail_exponent p declares |density(t)| = O(|t|^p) for large |t|.
    """

    kind: str
    scale: float = 1.0
    grid_t: Optional[np.ndarray] = None
    grid_v: Optional[np.ndarray] = None
    tail_exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in ("r_tanh_pi_r", "grid"):
            raise PairSchemaError(f"unknown density kind {self.kind!r}")
        if self.kind == "grid":
            if self.grid_t is None or self.grid_v is None:
                raise PairSchemaError("grid density requires sample points")
            t = np.asarray(self.grid_t, dtype=float)
            v = np.asarray(self.grid_v, dtype=float)
            if t.ndim != 1 or t.shape != v.shape or np.any(np.diff(t) <= 0):
                raise PairSchemaError("grid samples must be 1-d with increasing t")
            object.__setattr__(self, "grid_t", t)
            object.__setattr__(self, "grid_v", v)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "r_tanh_pi_r":
            return self.scale * t * np.tanh(math.pi * t)
        return self.scale * np.interp(t, self.grid_t, self.grid_v, left=0.0, right=0.0)


@dataclass(frozen=True)
class TemperedMeasure:
    """Atomic part (sorted locations, nonzero complex weights), optional
    density, a declared degree bound and a truncation note."""

    atom_locations: np.ndarray
    atom_weights: np.ndarray
    density: Optional[Density] = None
    degree_bound: int = 2
    truncation_note: str = ""

    def __post_init__(self):
        loc = np.asarray(self.atom_locations, dtype=float)
        w = np.asarray(self.atom_weights, dtype=complex)
        if loc.shape != w.shape or loc.ndim != 1:
            raise ValueError("locations and weights must be 1-d and equal length")
        loc, w = _merge_atoms(loc, w)
        object.__setattr__(self, "atom_locations", loc)
        object.__setattr__(self, "atom_weights", w)

    @property
    def truncation_radius(self) -> float:
        return float(np.max(np.abs(self.atom_locations))) if len(self.atom_locations) else 0.0

    def is_real(self) -> bool:
        return bool(np.all(self.atom_weights.imag == 0.0))


def _merge_atoms(loc, w):
    """Sort, merge atoms closer than ATOM_MERGE_EPS, drop zero weights."""
    if len(loc) == 0:
        return loc.copy(), w.copy()
    order = np.argsort(loc, kind="stable")
    loc, w = loc[order], w[order]
    out_loc, out_w = [loc[0]], [w[0]]
    for x, ww in zip(loc[1:], w[1:]):
        if x - out_loc[-1] < ATOM_MERGE_EPS:
            out_w[-1] += ww
        else:
            out_loc.append(x)
            out_w.append(ww)
    loc = np.array(out_loc)
    w = np.array(out_w, dtype=complex)
    keep = w != 0.0
    return loc[keep], w[keep]


@dataclass(frozen=True)
class SummationFunction:
    """Truncated a(.): strictly increasing frequencies with nonzero values,
    plus a growth constant c2 for the declared sum |a| e^{-c2 |l|} < inf."""

    lambdas: np.ndarray
    values: np.ndarray
    growth_constant: float = 0.1

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if lam.shape != v.shape or lam.ndim != 1:
            raise ValueError("lambdas and values must be 1-d and equal length")
        if self.growth_constant <= 0:
            raise ValueError("growth_constant must be positive")
        lam, v = _merge_atoms(lam, v)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "values", v)

    def value_at(self, lam: float) -> complex:
        idx = np.searchsorted(self.lambdas, lam)
        if idx < len(self.lambdas) and abs(self.lambdas[idx] - lam) < ATOM_MERGE_EPS:
            return complex(self.values[idx])
        if idx > 0 and abs(self.lambdas[idx - 1] - lam) < ATOM_MERGE_EPS:
            return complex(self.values[idx - 1])
        return 0.0 + 0.0j

    def is_antipodal(self) -> bool:
        for lam, v in zip(self.lambdas, self.values):
            if self.value_at(-lam) != v.conjugate():
                return False
        return True

    @property
    def lambda_max(self) -> float:
        return float(np.max(np.abs(self.lambdas))) if len(self.lambdas) else 0.0


@dataclass(frozen=True)
class FSPair:
    """A named (mu, a) with antipodality flag and strip constant c1."""

    name: str
    mu: TemperedMeasure
    a: SummationFunction
    antipodal: bool
    strip_constant: float
    gaussian_ok: bool = False  # both sides converge absolutely for Gaussians

    def __post_init__(self):
        if self.strip_constant <= 0:
            raise ValueError("strip_constant must be positive")
        if self.antipodal:
            if not self.mu.is_real():
                raise PairSchemaError("antipodal pair requires a real measure")
            if not self.a.is_antipodal():
                raise PairSchemaError("antipodal pair requires a(-l) = conj(a(l))")


def make_poisson(t_max: float = 64.0, lambda_max: float = 64.0) -> FSPair:
    """The Dirac-comb pair: unit atoms at the integers on both sides."""
    if t_max <= 0 or lambda_max <= 0:
        raise ValueError("truncation radii must be positive")
    n = np.arange(-int(t_max), int(t_max) + 1, dtype=float)
    m = np.arange(-int(lambda_max), int(lambda_max) + 1, dtype=float)
    mu = TemperedMeasure(n, np.ones_like(n, dtype=complex), None, 2,
                         f"atoms at integers |n| <= {int(t_max)}")
    a = SummationFunction(m, np.ones_like(m, dtype=complex), 0.1)
    return FSPair("poisson", mu, a, True, 0.1, gaussian_ok=True)


def make_guinand(c: float, n_max: int = 512) -> FSPair:
    """Self-dual pair from the eta-quotient coefficients: atoms of weight
    alpha_{n,c} at +-sqrt(n+c), identical a-side."""
    alpha = guinand_coeffs(c, n_max).coeffs
    n = np.arange(n_max + 1, dtype=float)
    loc = np.sqrt(n + c)
    locs = np.concatenate([-loc[::-1], loc])
    ws = np.concatenate([alpha[::-1], alpha]).astype(complex)
    mu = TemperedMeasure(locs, ws, None, 3,
                         f"atoms at +-sqrt(n+c), n <= {n_max}, c = {c}")
    a = SummationFunction(locs, ws, 0.1)
    return FSPair(f"guinand(c={c})", mu, a, True, 0.1)


def meyer_chi(n: int) -> float:
    """The character from the sum-of-three-squares pair: -1/2 off 4N,
    4 on 4N outside 16N, 0 on 16N."""
    if n % 16 == 0:
        return 0.0
    if n % 4 == 0:
        return 4.0
    return -0.5


def make_meyer(n_max: int = 2000) -> FSPair:
    """The odd crystalline pair with mu-hat = -i mu: weights
    +-chi(n) r3(n)/sqrt(n) at +-sqrt(n)/2, a = -i mu."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    r3 = r3_sequence(n_max).values
    ns = [n for n in range(1, n_max + 1) if r3[n] and meyer_chi(n)]
    loc = np.array([math.sqrt(n) / 2.0 for n in ns])
    w = np.array([meyer_chi(n) * r3[n] / math.sqrt(n) for n in ns])
    locs = np.concatenate([-loc[::-1], loc])
    ws = np.concatenate([-w[::-1], w]).astype(complex)
    mu = TemperedMeasure(locs, ws, None, 3, f"atoms at +-sqrt(n)/2, n <= {n_max}")
    a = SummationFunction(locs, -1j * ws, 0.1)
    return FSPair(f"meyer(n_max={n_max})", mu, a, True, 0.1)


def make_empty() -> FSPair:
    """The zero pair; trivially verifies 0 = 0."""
    empty = np.array([])
    mu = TemperedMeasure(empty, empty.astype(complex), None, 0, "empty")
    a = SummationFunction(empty, empty.astype(complex), 1.0)
    return FSPair("empty", mu, a, True, 0.1, gaussian_ok=True)


_PAIR_KEYS = {"name", "antipodal", "strip_constant", "mu", "a"}
_MU_KEYS = {"degree_bound", "atoms", "density"}
_A_KEYS = {"growth_constant", "support"}
_DENSITY_KEYS = {"kind", "scale", "grid"}


def _check_keys(obj: dict, allowed: set, where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise PairSchemaError(f"unknown field(s) in {where}: {sorted(unknown)}")


def load_pair(path) -> FSPair:
    """Read and validate a pair file (JSON schema in the package docs)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PairSchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise PairSchemaError("top-level value must be an object")
    _check_keys(raw, _PAIR_KEYS, "pair")
    try:
        name = str(raw["name"])
        antipodal = bool(raw["antipodal"])
        strip = float(raw["strip_constant"])
        mu_raw = raw["mu"]
        a_raw = raw["a"]
    except KeyError as exc:
        raise PairSchemaError(f"missing field {exc.args[0]!r}") from exc
    _check_keys(mu_raw, _MU_KEYS, "mu")
    _check_keys(a_raw, _A_KEYS, "a")

    atoms = mu_raw.get("atoms", [])
    loc, w = [], []
    last_t = -math.inf
    for entry in atoms:
        _check_keys(entry, {"t", "re", "im"}, "mu.atoms entry")
        t = float(entry["t"])
        if t <= last_t:
            raise PairSchemaError("mu.atoms must be sorted strictly ascending")
        last_t = t
        loc.append(t)
        w.append(complex(float(entry["re"]), float(entry["im"])))
    density = None
    if mu_raw.get("density") is not None:
        d = mu_raw["density"]
        _check_keys(d, _DENSITY_KEYS, "mu.density")
        kind = d.get("kind")
        scale = float(d.get("scale", 1.0))
        if kind == "grid":
            grid = d.get("grid", [])
            gt = [float(e["t"]) for e in grid]
            gv = [float(e["value"]) for e in grid]
            density = Density("grid", scale, np.array(gt), np.array(gv))
        else:
            density = Density(str(kind), scale)
    mu = TemperedMeasure(np.array(loc), np.array(w, dtype=complex), density,
                         int(mu_raw.get("degree_bound", 2)),
                         f"loaded from file, {len(loc)} atoms")

    lam, av = [], []
    last_l = -math.inf
    for entry in a_raw.get("support", []):
        _check_keys(entry, {"lambda", "re", "im"}, "a.support entry")
        l = float(entry["lambda"])
        if l <= last_l:
            raise PairSchemaError("a.support must be sorted strictly ascending")
        last_l = l
        lam.append(l)
        av.append(complex(float(entry["re"]), float(entry["im"])))
    a = SummationFunction(np.array(lam), np.array(av, dtype=complex),
                          float(a_raw.get("growth_constant", 0.1)))
    return FSPair(name, mu, a, antipodal, strip)


def _antipodal_part(a: SummationFunction, which: int) -> SummationFunction:
    lams = np.unique(np.concatenate([a.lambdas, -a.lambdas])) if len(a.lambdas) else a.lambdas
    vals = []
    for lam in lams:
        v = a.value_at(lam)
        cm = a.value_at(-lam).conjugate()
        vals.append((v + cm) / 2.0 if which == 1 else -1j * (cm - v) / 2.0)
    return SummationFunction(lams, np.array(vals, dtype=complex), a.growth_constant)


def antipodal_split(pair: FSPair):
    """Split a complex pair into two real-antipodal ones:
    mu = mu1 - i mu2 and a = a1 - i a2 on every support point."""
    mu1 = TemperedMeasure(pair.mu.atom_locations, pair.mu.atom_weights.real.astype(complex),
                          pair.mu.density, pair.mu.degree_bound, pair.mu.truncation_note)
    mu2 = TemperedMeasure(pair.mu.atom_locations, (-pair.mu.atom_weights.imag).astype(complex),
                          None, pair.mu.degree_bound, pair.mu.truncation_note)
    a1 = _antipodal_part(pair.a, 1)
    a2 = _antipodal_part(pair.a, 2)
    p1 = FSPair(pair.name + "/re", mu1, a1, True, pair.strip_constant)
    p2 = FSPair(pair.name + "/im", mu2, a2, True, pair.strip_constant)
    return p1, p2


@dataclass(frozen=True)
class DegreeProbeReport:
    n: int
    T_grid: tuple
    partials: tuple
    verdict: str  # converging | diverging | inconclusive


def degree_probe(mu: TemperedMeasure, n: int, T_grid: Sequence[float]) -> DegreeProbeReport:
    """Partial integrals of (1+t^2)^{-n/2} d|mu| on a growing window grid,
    with a last-ratio heuristic verdict.  A heuristic, never a proof."""
    T_grid = list(T_grid)
    if any(b <= a for a, b in zip(T_grid, T_grid[1:])):
        raise ValueError("T_grid must be increasing")
    loc = mu.atom_locations
    aw = np.abs(mu.atom_weights)
    partials = []
    for T in T_grid:
        mask = np.abs(loc) <= T
        val = float(np.sum(aw[mask] / (1.0 + loc[mask] ** 2) ** (n / 2.0)))
        if mu.density is not None:
            val += _fixed_quad(lambda t: np.abs(mu.density(t)) / (1.0 + t ** 2) ** (n / 2.0),
                               -T, T, max(400, int(8 * T)))
        partials.append(val)
    inc = np.diff(partials)
    verdict = "inconclusive"
    if len(inc) >= 2 and np.all(inc > 0):
        ratios = inc[1:] / inc[:-1]
        if np.all(ratios[-3:] < 0.9):
            verdict = "converging"
        elif np.all(ratios >= 0.97):
            verdict = "diverging"
    elif np.all(inc <= 1e-300):
        verdict = "converging"
    return DegreeProbeReport(n, tuple(T_grid), tuple(partials), verdict)


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error_estimate: float
    converged: bool = True

    def __complex__(self):
        return complex(self.value)


def _fixed_quad(f, a, b, n):
    """Composite Gauss-Legendre with n total nodes (rounded to panels of 8)."""
    panels = max(1, n // 8)
    x, w = np.polynomial.legendre.leggauss(8)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = f(pts)
    return np.sum(np.asarray(vals).reshape(panels, 8) * w[None, :] * half[:, None])


def _adaptive_simpson(f, a, b, tol, max_depth=28):
    """Recursive adaptive Simpson for complex-valued integrands.

    Returns (value, error_estimate, converged)."""

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = simpson(fa, fm, fb, b - a)
    hit_cap = [False]

    def rec(a, fa, m, fm, b, fb, whole, tol, depth):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        err = (left + right - whole) / 15.0
        if abs(err) <= tol or depth >= max_depth:
            if depth >= max_depth and abs(err) > tol:
                hit_cap[0] = True
            return left + right + err, abs(err)
        v1, e1 = rec(a, fa, lm, flm, m, fm, left, tol / 2.0, depth + 1)
        v2, e2 = rec(m, fm, rm, frm, b, fb, right, tol / 2.0, depth + 1)
        return v1 + v2, e1 + e2

    val, err = rec(a, fa, m, fm, b, fb, whole, tol, 0)
    return val, err, not hit_cap[0]


def integrate_against(mu: TemperedMeasure, f: Callable, T: float,
                      tol: float = 1e-10) -> IntegrationResult:
    """Pair mu against f on [-T, T]: exact atom sum plus adaptive quadrature
    of density * f.  Non-convergence is reported, not raised."""
    loc = mu.atom_locations
    mask = np.abs(loc) <= T
    total = 0.0 + 0.0j
    for t, w in zip(loc[mask], mu.atom_weights[mask]):
        total += w * complex(f(t))
    err = 0.0
    converged = True
    if mu.density is not None:
        dval, derr, ok = _adaptive_simpson(lambda t: complex(mu.density(t)) * complex(f(t)),
                                           -T, T, tol)
        total += dval
        err += derr
        converged = ok
    return IntegrationResult(total, err, converged)
