"""Fourier summation pairs: builders, verification and the holomorphic
(Nevanlinna/almost-periodic) side of the correspondence."""

from .measures import (
    FSPair,
    SummationFunction,
    TemperedMeasure,
    antipodal_split,
    degree_probe,
    integrate_against,
    load_pair,
    make_empty,
    make_guinand,
    make_meyer,
    make_poisson,
)
from .nevanlinna import (
    HolomorphicModel,
    ap_proxy,
    bridge_rhs,
    bridge_sum,
    build_model,
    ef_coeff,
    f_integral,
    f_series,
    fit_q,
    neg_index,
    nev_matrix,
    recover_measure,
    recover_measure_extrapolated,
)
from .qseries import euler_coeffs, guinand_coeffs, r3_sequence, series_pow, theta_coeffs
from .testfn import TestFunctionSpec, VerificationReport, eval_testfn, ft_testfn, verify_pair

__version__ = "0.1.0"
