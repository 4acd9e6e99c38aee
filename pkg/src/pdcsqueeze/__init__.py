"""Broadband squeezing from type-I parametric down-conversion, monochromatic pump.

Exact Bogoliubov solution and its four-parameter characterisation, the
Bloch-Messiah decomposition with bichromatic squeezing eigenmodes, the first
three closed-form Magnus approximations, balanced-homodyne noise spectra,
cross-cutting comparison studies, and independent numerical oracles for all
closed forms.
"""

from .analysis import (
    GainSweep,
    TaylorReport,
    default_theta_grid,
    deviation_metrics,
    first_zero,
    gain_sweep,
    params_grid,
    spectrum_curve,
    squeezing_db,
    taylor_extract,
    taylor_reference,
    ultra_high_gain_distance,
    zeta,
)
from .homodyne import HomodyneConfig, LockMode, lock_beta, noise_spectrum, noise_spectrum_curve
from .magnus import (
    MagnusCoeffs,
    convergence_bound_ok,
    magnus_S_tilde,
    magnus_coeffs,
    magnus_params,
    magnus_params_grid,
    magnus_term,
)
from .oracle import (
    IntegratorSpec,
    bloch_messiah_numeric,
    expm_numeric,
    magnus_term_quadrature,
    ode_propagate,
    ode_propagate_grid,
)
from .pdc_exact import (
    AngleStatus,
    BogoliubovPair,
    PumpCrystalConfig,
    Quadratic,
    SqueezingParams,
    ThetaDirect,
    exact_AB,
    exact_params,
    exact_params_grid,
    exact_UV,
    gamma_is_real,
    kappa_of,
    squeezing_params,
    squeezing_spectrum,
    theta_of,
    unwrap_angle,
)
from .specfun import EntirePair, entire_cosh_sinhc, sinc, sph_bessel
from .symplectic_bm import (
    BlochMessiahFactors,
    K_METRIC,
    Symplectic4,
    assemble_S_tilde,
    bloch_messiah,
    bm_reconstruct,
    build_s_tilde,
    check_symplectic,
    coupling_matrix,
    eigenmode_sample,
    pair_from_matrix,
    phase_matrix,
    quadrature_map,
    squeezer_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AngleStatus",
    "BlochMessiahFactors",
    "BogoliubovPair",
    "EntirePair",
    "GainSweep",
    "HomodyneConfig",
    "IntegratorSpec",
    "K_METRIC",
    "LockMode",
    "MagnusCoeffs",
    "PumpCrystalConfig",
    "Quadratic",
    "SqueezingParams",
    "Symplectic4",
    "TaylorReport",
    "ThetaDirect",
    "assemble_S_tilde",
    "bloch_messiah",
    "bloch_messiah_numeric",
    "bm_reconstruct",
    "build_s_tilde",
    "check_symplectic",
    "convergence_bound_ok",
    "coupling_matrix",
    "default_theta_grid",
    "deviation_metrics",
    "eigenmode_sample",
    "entire_cosh_sinhc",
    "exact_AB",
    "exact_params",
    "exact_params_grid",
    "exact_UV",
    "expm_numeric",
    "first_zero",
    "gain_sweep",
    "gamma_is_real",
    "kappa_of",
    "lock_beta",
    "magnus_S_tilde",
    "magnus_coeffs",
    "magnus_params",
    "magnus_params_grid",
    "magnus_term",
    "magnus_term_quadrature",
    "noise_spectrum",
    "noise_spectrum_curve",
    "ode_propagate",
    "ode_propagate_grid",
    "pair_from_matrix",
    "params_grid",
    "phase_matrix",
    "quadrature_map",
    "sinc",
    "spectrum_curve",
    "sph_bessel",
    "squeezer_matrix",
    "squeezing_db",
    "squeezing_params",
    "squeezing_spectrum",
    "taylor_extract",
    "taylor_reference",
    "theta_of",
    "ultra_high_gain_distance",
    "unwrap_angle",
    "zeta",
]
