"""Cross-cutting studies: solution comparison, gain sweeps, Taylor tables, dB.

Collects the quantitative comparisons between the exact solution and the
Magnus approximations: the ultra-high-gain boundary distance, decibel
conversion of the squeezing parameter, r(g) sweeps at fixed mismatch,
small-g Taylor-coefficient extraction with closed-form references, and
max-deviation metrics over a mismatch grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import magnus as _magnus
from . import pdc_exact as _exact
from .pdc_exact import PumpCrystalConfig, squeezing_spectrum, unwrap_angle
from .specfun import sph_bessel

__all__ = [
    "SOLUTIONS",
    "params_grid",
    "spectrum_curve",
    "GainSweep",
    "TaylorReport",
    "ultra_high_gain_distance",
    "squeezing_db",
    "gain_sweep",
    "taylor_extract",
    "taylor_reference",
    "zeta",
    "deviation_metrics",
    "first_zero",
    "default_theta_grid",
]

SOLUTIONS = ("exact", "ma1", "ma2", "ma3")

# Small-g fit grid for Taylor extraction: 10 points spanning [1e-3, 2e-2].
_FIT_G = np.linspace(1e-3, 2e-2, 10)


def default_theta_grid(n: int = 2001, span: float = 4.0 * np.pi) -> np.ndarray:
    """The standard mismatch grid: n uniform points over [-span, span]."""
    return np.linspace(-span, span, n)


def params_grid(solution: str, cfg: PumpCrystalConfig, thetas, kappas=None) -> dict:
    """Four-parameter arrays of the chosen solution over a theta grid."""
    if solution == "exact":
        return _exact.exact_params_grid(cfg, thetas, kappas)
    if solution in ("ma1", "ma2", "ma3"):
        return _magnus.magnus_params_grid(int(solution[2]), cfg, thetas, kappas)
    raise ValueError(f"unknown solution selector {solution!r}; need one of {SOLUTIONS}")


def spectrum_curve(solution: str, cfg: PumpCrystalConfig, thetas):
    """Spectrum of squeezing and the continuous squeezing angle on a grid.

    Returns ``(s, psi_cont)`` where ``psi_cont`` is the unwrapped angle
    (indeterminate points bridged by interpolation).
    """
    thetas = np.asarray(thetas, dtype=float)
    d = params_grid(solution, cfg, thetas)
    s = squeezing_spectrum(d["r"])
    psi = unwrap_angle(thetas, d["r"], d["psi_L"], d["defined"])
    return s, psi


@dataclass(frozen=True)
class GainSweep:
    """r(g) curves of several solutions at one fixed mismatch angle."""

    theta_fixed: float
    g_grid: np.ndarray
    curves: dict[str, np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class TaylorReport:
    """Small-g Taylor coefficients of one parameter for one solution.

    ``estimates[k]`` approximates the coefficient of g**k/k! in the expansion
    of the parameter at fixed theta; ``uncertainties[k]`` is a first-order
    bound propagated from the least-squares residual; ``references[k]`` is
    the closed-form table value.
    """

    parameter: str
    solution: str
    theta: float
    orders: tuple[int, ...]
    estimates: dict[int, float]
    uncertainties: dict[int, float]
    references: dict[int, float]


def ultra_high_gain_distance(g: float) -> float:
    """Relative distance d = sqrt((g/pi)^2 + 1) - 1 between the first zeros.

    The first zero of the exact degree of squeezing sits at
    theta0 = sqrt(g^2 + pi^2) while the first-order approximation has its
    zero at theta1 = pi; d measures their relative separation.  d(1.44) is
    0.100: squeezing of 12.5 dB marks the ultra-high-gain boundary.
    """
    if g < 0:
        raise ValueError("gain exponent g must be >= 0")
    return float(np.sqrt((g / np.pi) ** 2 + 1.0) - 1.0)


def squeezing_db(r) -> float | np.ndarray:
    """Squeezing in decibels: -10*log10(exp(-2r)) = 20*r*log10(e)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("squeezing parameter r must be >= 0")
    out = 20.0 * r * np.log10(np.e)
    return out if out.ndim else float(out)


def gain_sweep(theta_fixed: float, g_grid, solutions=SOLUTIONS, phi: float = 0.0) -> GainSweep:
    """Degree of squeezing against the gain exponent at fixed mismatch."""
    g_grid = np.asarray(g_grid, dtype=float)
    if np.any(g_grid < 0):
        raise ValueError("gain grid must be nonnegative")
    if np.any(g_grid > np.pi):
        warnings.warn(
            "gain exponents above pi: convergence of the Magnus expansion "
            "is not guaranteed there",
            stacklevel=2,
        )
    curves = {}
    for sol in solutions:
        r = np.empty_like(g_grid)
        for i, g in enumerate(g_grid):
            cfg = PumpCrystalConfig(g=float(g), phi=phi)
            r[i] = params_grid(sol, cfg, np.asarray([theta_fixed]))["r"][0]
        curves[sol] = r
    return GainSweep(theta_fixed=float(theta_fixed), g_grid=g_grid, curves=curves)


def zeta(theta):
    """The Taylor-table shortcut zeta = (sin(t) j0(t) - cos(t) j1(t)) / 2."""
    theta = np.asarray(theta, dtype=float)
    out = 0.5 * (np.sin(theta) * sph_bessel(0, theta) - np.cos(theta) * sph_bessel(1, theta))
    return out if out.ndim else float(out)


def taylor_reference(parameter: str, solution: str, k: int, theta: float, phi: float = 0.0) -> float:
    """Closed-form Taylor coefficient (the reference-table value).

    Degree of squeezing (coefficient of g^k/k!):
        k=1: j0 for every solution; k=2 and k=4: 0;
        k=3: j0 - j0^3 + j2 for the exact solution and order 3, else 0.
    Squeezing angle:
        k=0: (phi - theta)/2; k=1 and k=3: 0;
        k=2: zeta(theta), except 0 at order 1.
    """
    if parameter == "r":
        if k == 1:
            return float(sph_bessel(0, theta))
        if k == 3 and solution in ("exact", "ma3"):
            j0 = sph_bessel(0, theta)
            return float(j0 + sph_bessel(2, theta) - j0**3)
        return 0.0
    if parameter == "psi_L":
        if k == 0:
            return 0.5 * (phi - theta)
        if k == 2 and solution != "ma1":
            return float(zeta(theta))
        return 0.0
    raise ValueError(f"unknown parameter {parameter!r}; need 'r' or 'psi_L'")


def _fit_orders(parameter: str, max_order: int) -> tuple[int, ...]:
    if parameter == "r":
        return tuple(range(1, max_order + 1))
    return tuple(range(0, max_order + 1))


def taylor_extract(parameter: str, solution: str, theta: float, max_order: int,
                   phi: float = 0.0) -> TaylorReport:
    """Extract small-g Taylor coefficients of a parameter by polynomial fit.

    Fits the shipped numerical code path (not a symbolic derivative) over 10
    gains in [1e-3, 2e-2] with a least-squares polynomial of degree
    max_order + 2, in the scaled variable g/gmax for conditioning.
    Coefficients are reported in the g^k/k! convention of the reference
    tables, with uncertainties propagated from the fit residual.

    Raises
    ------
    ValueError
        For an unknown parameter/solution, max_order out of range, or an
        ill-conditioned fit.
    """
    if parameter not in ("r", "psi_L"):
        raise ValueError(f"unknown parameter {parameter!r}; need 'r' or 'psi_L'")
    if solution not in SOLUTIONS:
        raise ValueError(f"unknown solution selector {solution!r}")
    if not 0 < max_order <= 4:
        raise ValueError(f"max_order must be in 1..4, got {max_order}")

    gs = _FIT_G
    vals = np.empty_like(gs)
    for i, g in enumerate(gs):
        cfg = PumpCrystalConfig(g=float(g), phi=phi)
        d = params_grid(solution, cfg, np.asarray([theta]))
        vals[i] = d[parameter][0]
    if parameter == "psi_L" and np.max(np.abs(np.diff(vals))) > 0.5:
        raise ValueError(
            "squeezing angle jumps inside the fit window; "
            f"theta={theta} sits at a branch point of the raw angle"
        )

    degree = max_order + 2
    scale = gs[-1]
    x = gs / scale
    A = np.vander(x, degree + 1, increasing=True)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > 1e10:
        raise ValueError("Taylor fit is ill-conditioned; reduce max_order")
    coef, _, _, _ = np.linalg.lstsq(A, vals, rcond=None)
    fitted = A @ coef
    res_norm = float(np.linalg.norm(vals - fitted))
    # First-order coefficient sensitivity: rows of the pseudo-inverse.
    Apinv = np.linalg.pinv(A)
    sens = np.linalg.norm(Apinv, axis=1)

    orders = _fit_orders(parameter, max_order)
    estimates, uncertainties, references = {}, {}, {}
    for k in orders:
        kf = float(math.factorial(k))
        estimates[k] = float(coef[k] / scale**k * kf)
        uncertainties[k] = float((res_norm + 1e-15) * sens[k] / scale**k * kf)
        references[k] = taylor_reference(parameter, solution, k, theta, phi)
    return TaylorReport(
        parameter=parameter, solution=solution, theta=float(theta), orders=orders,
        estimates=estimates, uncertainties=uncertainties, references=references,
    )


def deviation_metrics(solution_a: str, solution_b: str, cfg: PumpCrystalConfig,
                      thetas) -> dict[str, float]:
    """Max deviations between two solutions over a theta grid.

    Returns ``{"max_abs_s": ..., "max_abs_psi": ...}`` where the angle
    comparison uses the unwrapped continuous curves (both anchored at their
    maximal-r point, so the anchors coincide at perfect phase matching).
    """
    thetas = np.asarray(thetas, dtype=float)
    sa, pa = spectrum_curve(solution_a, cfg, thetas)
    sb, pb = spectrum_curve(solution_b, cfg, thetas)
    return {
        "max_abs_s": float(np.max(np.abs(sa - sb))),
        "max_abs_psi": float(np.max(np.abs(pa - pb))),
    }


def first_zero(solution: str, cfg: PumpCrystalConfig, thetas) -> float:
    """First zero of the degree of squeezing on the positive-theta side.

    r >= 0 with isolated zeros, so every interior local minimum of r over
    theta > 0 is a zero; the first one is returned at grid resolution.

    Raises
    ------
    ValueError
        If no zero lies inside the grid.
    """
    thetas = np.asarray(thetas, dtype=float)
    r = params_grid(solution, cfg, thetas)["r"]
    pos = np.flatnonzero(thetas > 0)
    if pos.size < 3:
        raise ValueError("theta grid has too few positive points")
    rp = r[pos]
    interior = np.flatnonzero((rp[1:-1] <= rp[:-2]) & (rp[1:-1] <= rp[2:]))
    if interior.size == 0:
        raise ValueError("no zero of r found inside the positive-theta grid")
    return float(thetas[pos[interior[0] + 1]])
