"""Exact solution for collinear type-I down-conversion with a monochromatic pump.

The propagation of the slowly-varying sideband amplitude obeys

    d/dz eps(Omega, z) = sigma * exp(i * Delta(Omega) * z) * eps^dag(-Omega, z),

whose solution over a crystal of length L is a Bogoliubov transformation with
coefficients (written with theta = Delta*L/2, g = |sigma|*L, phi = arg sigma,
and u = (Gamma*L)^2 = g^2 - theta^2):

    A = exp(i*theta) * (C(u) - i*theta*S(u)),
    B = exp(i*theta) * g * exp(i*phi) * S(u),

where (C, S) is the entire pair from :mod:`pdcsqueeze.specfun`.  Everything
here is expressed in those dimensionless combinations, so the crystal length
enters only through the products ``g`` and ``theta``.

A sideband pair (U(+Omega), V(+Omega), U(-Omega), V(-Omega)) is characterised
by four real numbers: the squeezing parameter ``r``, the output and input
squeezing angles ``psi_L`` and ``psi_0``, and the group-delay angle ``kappa``.
This module computes the coefficients, extracts the four parameters, converts
``r`` to the spectrum of squeezing ``s = exp(-2 r)``, and restores continuity
of the squeezing angle across the zeros of ``r`` where the raw principal-value
angle jumps by pi/2.

All functions are pure; grid arguments may be numpy arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .specfun import entire_cosh_sinhc

__all__ = [
    "PumpCrystalConfig",
    "ThetaDirect",
    "Quadratic",
    "DispersionModel",
    "BogoliubovPair",
    "AngleStatus",
    "SqueezingParams",
    "theta_of",
    "kappa_of",
    "exact_AB",
    "exact_UV",
    "exact_params",
    "exact_params_grid",
    "squeezing_params",
    "squeezing_spectrum",
    "unwrap_angle",
    "gamma_is_real",
]

# Tolerance for the Bogoliubov preconditions (unitarity and the shared
# U/V ratio); pairs violating them are rejected rather than silently
# producing meaningless angles.
_PAIR_TOL = 1e-6


@dataclass(frozen=True)
class PumpCrystalConfig:
    """Pump/crystal parameters: gain exponent g = |sigma|*L, pump phase, length."""

    g: float
    phi: float = 0.0
    L: float = 1.0

    def __post_init__(self):
        if not self.g >= 0.0:
            raise ValueError(f"gain exponent g must be >= 0, got {self.g}")
        if not self.L > 0.0:
            raise ValueError(f"crystal length L must be > 0, got {self.L}")


@dataclass(frozen=True)
class ThetaDirect:
    """Abscissa mode: the sweep variable is the mismatch angle theta itself.

    The group-delay angle is 0 in this mode (pure slowly-varying frame).
    """


@dataclass(frozen=True)
class Quadratic:
    """Quadratic dispersion: Delta(Omega) = -beta2 * Omega**2, kappa = tau_g * Omega."""

    beta2: float
    tau_g: float = 0.0

    def __post_init__(self):
        if not self.tau_g >= 0.0:
            raise ValueError(f"group delay tau_g must be >= 0, got {self.tau_g}")


DispersionModel = ThetaDirect | Quadratic


class AngleStatus(enum.Enum):
    """Validity of the angle fields of :class:`SqueezingParams`.

    ``INDETERMINATE`` marks points where V = 0 exactly (r = 0), so psi_L and
    psi_0 have no value; ``INTERPOLATED`` marks angles bridged linearly across
    such points by a grid pipeline.  Carried explicitly instead of NaN so that
    angle unwrapping stays deterministic.
    """

    DEFINED = "defined"
    INDETERMINATE = "indeterminate"
    INTERPOLATED = "interpolated"


@dataclass(frozen=True)
class BogoliubovPair:
    """Bogoliubov coefficients of one sideband pair at detunings +Omega and -Omega."""

    U_plus: complex
    V_plus: complex
    U_minus: complex
    V_minus: complex

    def unitarity_defect(self) -> float:
        """Max deviation of |U|^2 - |V|^2 from 1 over both sidebands."""
        dp = abs(abs(self.U_plus) ** 2 - abs(self.V_plus) ** 2 - 1.0)
        dm = abs(abs(self.U_minus) ** 2 - abs(self.V_minus) ** 2 - 1.0)
        return max(dp, dm)

    def ratio_defect(self) -> float:
        """Relative violation of U(+)/V(+) = U(-)/V(-), as a cross product."""
        a = self.U_plus * self.V_minus
        b = self.U_minus * self.V_plus
        scale = max(abs(a), abs(b))
        if scale == 0.0:
            return 0.0
        return abs(a - b) / scale


@dataclass(frozen=True)
class SqueezingParams:
    """The four real parameters of one sideband pair.

    ``psi_L`` and ``kappa`` are principal half-arguments in (-pi/2, pi/2];
    ``psi_0`` lies in (-pi, pi] and carries the phase offset that makes the
    params -> matrix -> params round trip exact (psi_L + psi_0 = phi mod pi).
    """

    r: float
    psi_L: float
    psi_0: float
    kappa: float
    angle_status: AngleStatus = AngleStatus.DEFINED

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError(f"squeezing parameter r must be >= 0, got {self.r}")


def theta_of(model: DispersionModel, omega, L: float = 1.0):
    """Phase-mismatch angle theta(Omega) = Delta(Omega) * L / 2.

    In ``ThetaDirect`` mode ``omega`` is interpreted as theta itself.
    """
    omega = np.asarray(omega, dtype=float)
    if isinstance(model, ThetaDirect):
        out = omega
    else:
        out = -model.beta2 * omega**2 * L / 2.0
    return out if out.ndim else float(out)


def kappa_of(model: DispersionModel, omega):
    """Group-delay angle kappa(Omega) = tau_g * Omega (0 in ThetaDirect mode)."""
    omega = np.asarray(omega, dtype=float)
    if isinstance(model, ThetaDirect):
        out = np.zeros_like(omega)
    else:
        out = model.tau_g * omega
    return out if out.ndim else float(out)


def exact_AB(cfg: PumpCrystalConfig, theta):
    """Exact slowly-varying Bogoliubov coefficients (A, B) at mismatch angle theta.

    Evaluated through u = g^2 - theta^2 with the entire (C, S) pair, so the
    transition between hyperbolic and trigonometric behaviour is seamless.
    Satisfies |A|^2 - |B|^2 = 1.
    """
    theta = np.asarray(theta, dtype=float)
    u = cfg.g**2 - theta**2
    pair = entire_cosh_sinhc(u)
    phase = np.exp(1j * theta)
    A = phase * (pair.c - 1j * theta * pair.s)
    B = phase * (cfg.g * np.exp(1j * cfg.phi)) * pair.s
    if A.ndim == 0:
        return complex(A), complex(B)
    return A, B


def _sideband_phases(theta, kappa):
    """exp(i*deltak(+-Omega)*L) for degenerate phase matching (k_p = 2 k_0).

    deltak(Omega)*L = kappa(Omega) - theta(Omega); kappa is odd, theta even.
    """
    return np.exp(1j * (kappa - theta)), np.exp(1j * (-kappa - theta))


def exact_UV(cfg: PumpCrystalConfig, model: DispersionModel, omega) -> BogoliubovPair:
    """Bogoliubov coefficients of the sideband operators at detunings +-omega."""
    theta = theta_of(model, omega, cfg.L)
    kappa = kappa_of(model, omega)
    A, B = exact_AB(cfg, theta)
    ph_p, ph_m = _sideband_phases(theta, kappa)
    return BogoliubovPair(
        U_plus=A * ph_p, V_plus=B * ph_p, U_minus=A * ph_m, V_minus=B * ph_m
    )


def _extract_params_arrays(Up, Vp, Um, Vm):
    """Vectorised four-parameter extraction from Bogoliubov coefficients.

    Returns (r, psi_L, psi_0, kappa, defined).  psi_0 is chosen in (-pi, pi]
    so that reassembling the symplectic matrix from the parameters reproduces
    the input coefficients exactly (not only modulo a global sign).
    """
    Up = np.asarray(Up, dtype=complex)
    Vp = np.asarray(Vp, dtype=complex)
    Um = np.asarray(Um, dtype=complex)
    Vm = np.asarray(Vm, dtype=complex)
    # r = ln(|U| + |V|); with |U|^2 - |V|^2 = 1 this is asinh(|V|), which is
    # the cancellation-free form (ln loses ~1e-16 absolute accuracy at small r).
    r = np.arcsinh(np.abs(Vp))
    defined = (Vp != 0) & (Vm != 0)
    # Guard the indeterminate entries; their angles are zeroed below.
    Vm_s = np.where(defined, Vm, 1.0)
    psi_L = 0.5 * np.angle(Up * Vm_s)
    kappa = 0.5 * np.angle(Up * np.conj(Um))
    psi_0 = np.angle(np.exp(1j * (psi_L + kappa)) * np.abs(Up) / Up)
    psi_L = np.where(defined, psi_L, 0.0)
    psi_0 = np.where(defined, psi_0, 0.0)
    return r, psi_L, psi_0, kappa, defined


def squeezing_params(pair: BogoliubovPair) -> SqueezingParams:
    """Extract (r, psi_L, psi_0, kappa) from one Bogoliubov pair.

    Raises
    ------
    ValueError
        If the pair violates unitarity or the shared-ratio condition by more
        than 1e-6.
    """
    d = pair.unitarity_defect()
    if d > _PAIR_TOL:
        raise ValueError(f"Bogoliubov pair violates |U|^2 - |V|^2 = 1 by {d:.3e}")
    d = pair.ratio_defect()
    if d > _PAIR_TOL:
        raise ValueError(f"Bogoliubov pair violates U(+)/V(+) = U(-)/V(-) by {d:.3e}")
    r, psi_L, psi_0, kappa, defined = _extract_params_arrays(
        pair.U_plus, pair.V_plus, pair.U_minus, pair.V_minus
    )
    status = AngleStatus.DEFINED if bool(defined) else AngleStatus.INDETERMINATE
    return SqueezingParams(
        r=float(r), psi_L=float(psi_L), psi_0=float(psi_0), kappa=float(kappa),
        angle_status=status,
    )


def exact_params(cfg: PumpCrystalConfig, theta: float, kappa: float = 0.0) -> SqueezingParams:
    """Four parameters of the exact solution at mismatch angle theta."""
    A, B = exact_AB(cfg, theta)
    ph_p, ph_m = _sideband_phases(np.asarray(theta, float), np.asarray(kappa, float))
    pair = BogoliubovPair(A * ph_p, B * ph_p, A * ph_m, B * ph_m)
    return squeezing_params(pair)


def exact_params_grid(cfg: PumpCrystalConfig, thetas, kappas=None):
    """Vectorised exact parameters over a theta grid.

    Returns a dict with arrays ``r``, ``psi_L``, ``psi_0``, ``kappa`` and the
    boolean mask ``defined`` (False where V = 0 exactly).
    """
    thetas = np.asarray(thetas, dtype=float)
    kappas = np.zeros_like(thetas) if kappas is None else np.asarray(kappas, dtype=float)
    A, B = exact_AB(cfg, thetas)
    ph_p, ph_m = _sideband_phases(thetas, kappas)
    r, psi_L, psi_0, kap, defined = _extract_params_arrays(
        A * ph_p, B * ph_p, A * ph_m, B * ph_m
    )
    return {"r": r, "psi_L": psi_L, "psi_0": psi_0, "kappa": kap, "defined": defined}


def squeezing_spectrum(r):
    """Spectrum of squeezing s = exp(-2 r); lies in (0, 1] for r >= 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("squeezing parameter r must be >= 0")
    out = np.exp(-2.0 * r)
    return out if out.ndim else float(out)


def gamma_is_real(g: float, theta):
    """True where the gain coefficient Gamma is real, i.e. |theta| < g."""
    theta = np.asarray(theta, dtype=float)
    out = np.abs(theta) < g
    return out if out.ndim else bool(out)


def unwrap_angle(thetas, r, psi_raw, defined=None):
    """Continuous version of the squeezing angle on an ordered theta grid.

    The raw principal-value angle jumps by pi/2 at the zeros of r (and by pi
    at branch crossings of the half-argument).  This removes those jumps by
    adding integer multiples of pi/2 pointwise, anchoring the curve at the
    grid point of maximal r, whose raw value is kept.  Points flagged False
    in ``defined`` (angle indeterminate because r = 0 exactly) are bridged by
    linear interpolation in theta.

    Raises
    ------
    ValueError
        If adjacent corrected values still differ by >= pi/4, which means the
        grid is too coarse to unwrap unambiguously; the offending theta
        interval is named in the message.
    """
    thetas = np.asarray(thetas, dtype=float)
    r = np.asarray(r, dtype=float)
    psi_raw = np.asarray(psi_raw, dtype=float)
    if thetas.ndim != 1 or thetas.shape != r.shape or thetas.shape != psi_raw.shape:
        raise ValueError("thetas, r and psi_raw must be 1-d arrays of equal length")
    if thetas.size and np.any(np.diff(thetas) <= 0):
        raise ValueError("theta grid must be strictly increasing")
    if defined is None:
        defined = np.ones_like(r, dtype=bool)
    else:
        defined = np.asarray(defined, dtype=bool)

    if not np.any(defined):
        return np.zeros_like(psi_raw)

    idx = np.flatnonzero(defined)
    th_d = thetas[idx]
    psi_d = psi_raw[idx]
    quarter = np.pi / 2.0

    jumps = np.round(np.diff(psi_d) / quarter)
    k = np.concatenate(([0.0], np.cumsum(jumps)))
    cont = psi_d - quarter * k
    anchor = int(np.argmax(r[idx]))
    cont = cont + quarter * k[anchor]

    dif = np.abs(np.diff(cont))
    bad = np.flatnonzero(dif >= np.pi / 4.0 - 1e-12)
    if bad.size:
        i = int(bad[0])
        raise ValueError(
            "grid too coarse to unwrap the squeezing angle between "
            f"theta={th_d[i]:.6g} and theta={th_d[i + 1]:.6g} "
            f"(corrected step {dif[i]:.6g} >= pi/4)"
        )

    if idx.size == thetas.size:
        return cont
    return np.interp(thetas, th_d, cont)
