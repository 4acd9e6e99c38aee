"""Balanced homodyne detection of the squeezed output field.

For squeezed vacuum and a strong monochromatic local oscillator of phase
``beta``, the photocurrent spectral density normalised to shot noise is

    n(Omega) = cos^2(psi_L - beta) e^{2r} + sin^2(psi_L - beta) e^{-2r},

with (r, psi_L) the squeezing parameters at the sideband frequency.  Unit
quantum efficiency and the strong-LO limit are built in.  The customary
locking choice sets beta so that psi_L - beta = pi/2 at perfect phase
matching (theta = 0), which puts the squeezed quadrature on the detector
where squeezing is strongest.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import magnus as _magnus
from . import pdc_exact as _exact
from .pdc_exact import PumpCrystalConfig

__all__ = ["LockMode", "HomodyneConfig", "noise_spectrum", "lock_beta", "noise_spectrum_curve"]


class LockMode(enum.Enum):
    FIXED_BETA = "fixed_beta"
    LOCK_AT_THETA_ZERO = "lock_at_theta_zero"


@dataclass(frozen=True)
class HomodyneConfig:
    """Local-oscillator phase, either given directly or locked at theta = 0."""

    beta: float = 0.0
    lock_mode: LockMode = LockMode.FIXED_BETA


def noise_spectrum(r, psi_L, beta):
    """Normalised photocurrent noise; 1 is shot noise, e^{-2r} full squeezing.

    pi-periodic in (psi_L - beta) and bounded by [e^{-2r}, e^{2r}].
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("squeezing parameter r must be >= 0")
    delta = np.asarray(psi_L, dtype=float) - beta
    out = np.cos(delta) ** 2 * np.exp(2.0 * r) + np.sin(delta) ** 2 * np.exp(-2.0 * r)
    return out if out.ndim else float(out)


def lock_beta(cfg: PumpCrystalConfig) -> float:
    """LO phase with psi_L(theta=0) - beta = pi/2 (squeezed quadrature detected)."""
    p0 = _exact.exact_params(cfg, 0.0)
    return p0.psi_L - np.pi / 2.0


def _resolve_beta(cfg: PumpCrystalConfig, h: HomodyneConfig) -> float:
    if h.lock_mode is LockMode.LOCK_AT_THETA_ZERO:
        return lock_beta(cfg)
    return h.beta


def noise_spectrum_curve(solution: str, cfg: PumpCrystalConfig, thetas,
                         homodyne: HomodyneConfig) -> np.ndarray:
    """Noise spectrum over a theta grid for one solution.

    ``solution`` is ``"exact"`` or ``"ma1"``/``"ma2"``/``"ma3"``.  The raw
    (principal-value) squeezing angle is used: it always labels the stretched
    quadrature, so the cos^2/sin^2 pairing stays physically correct across
    the zeros of r, where the curve passes continuously through shot noise.
    """
    thetas = np.asarray(thetas, dtype=float)
    beta = _resolve_beta(cfg, homodyne)
    if solution == "exact":
        d = _exact.exact_params_grid(cfg, thetas)
    elif solution in ("ma1", "ma2", "ma3"):
        d = _magnus.magnus_params_grid(int(solution[2]), cfg, thetas)
    else:
        raise ValueError(f"unknown solution selector {solution!r}")
    return noise_spectrum(d["r"], d["psi_L"], beta)
