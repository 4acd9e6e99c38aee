"""Closed-form Magnus approximations of the down-conversion transformation.

The z-ordered exponential solving the propagation equation is written as
exp(O1 + O2 + O3 + ...), where O_k is an iterated-commutator integral of
order k in the coupling.  For a monochromatic pump the first three terms
integrate in closed form (theta = Delta*L/2, g = |sigma|*L, phi = arg sigma):

    O1 = [[0, b1 e^{i(phi+theta)} P], [b1 e^{-i(phi+theta)} P, 0]],
         b1 = g sinc(theta),
    O2 = i a2 K,   a2 = (g^2/2) (j0 sin(theta) - j1 cos(theta)),
    O3 = (g^3/6) (j0 + j2 - j0^3) [[0, e^{i(phi+theta)} P], ...].

Because O1 + ... + O_k always has the form [[i a I, beta P], [conj(beta) P,
-i a I]] with beta = b e^{i(phi+theta)}, its square is (b^2 - a^2) I and the
exponential reduces to the entire pair (C, S) evaluated at gamma^2 = b^2 -
a^2, with no square root ever taken: the order-k transformation is

    U_k = Lam e^{-i theta} (C + i a S),   V_k = Lam P e^{i phi} b S.

Truncating the series at any order keeps the matrix exactly symplectic.
The expansion is guaranteed to converge for g < pi (integral of the coupling
spectral norm below pi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pdc_exact import AngleStatus, PumpCrystalConfig, SqueezingParams
from .specfun import entire_cosh_sinhc, sinc, sph_bessel
from .symplectic_bm import Symplectic4, build_s_tilde

__all__ = [
    "MagnusCoeffs",
    "magnus_coeffs",
    "magnus_term",
    "magnus_S_tilde",
    "magnus_params",
    "magnus_params_grid",
    "convergence_bound_ok",
]

_ORDERS = (1, 2, 3)


@dataclass(frozen=True)
class MagnusCoeffs:
    """Scalar coefficients of the order-k generator sum.

    ``a`` multiplies the i*K part (zero at order 1 and identical for orders
    2 and 3), ``b`` the antidiagonal part, and ``gamma_sq = b^2 - a^2`` feeds
    the entire (C, S) pair; it may be negative and no root of it is taken.
    """

    order: int
    a: float
    b: float
    gamma_sq: float


def _check_order(k: int):
    if k not in _ORDERS:
        raise ValueError(f"unsupported Magnus order k={k!r}; need k in {{1, 2, 3}}")


def _coeff_arrays(k: int, g, theta):
    g = np.asarray(g, dtype=float)
    theta = np.asarray(theta, dtype=float)
    j0 = sph_bessel(0, theta)
    b = g * j0
    if k == 1:
        a = np.zeros(np.broadcast_shapes(g.shape, theta.shape))
    else:
        a = 0.5 * g**2 * (j0 * np.sin(theta) - sph_bessel(1, theta) * np.cos(theta))
    if k == 3:
        b = b + (g**3 / 6.0) * (j0 + sph_bessel(2, theta) - j0**3)
    return np.broadcast_to(a, b.shape).copy(), b


def magnus_coeffs(k: int, g: float, theta: float) -> MagnusCoeffs:
    """Closed-form coefficients (a, b, gamma^2) at order k."""
    _check_order(k)
    a, b = _coeff_arrays(k, g, theta)
    a, b = float(a), float(b)
    return MagnusCoeffs(order=k, a=a, b=b, gamma_sq=b * b - a * a)


def magnus_term(k: int, cfg: PumpCrystalConfig, theta: float) -> np.ndarray:
    """The single order-k term O_k of the expansion (a 4x4 complex matrix).

    Each term obeys the symplectic-generator condition K O^dag K = -O and
    scales as g**k.
    """
    _check_order(k)
    out = np.zeros((4, 4), dtype=complex)
    if k == 2:
        c = magnus_coeffs(2, cfg.g, theta)
        out[0, 0] = out[1, 1] = 1j * c.a
        out[2, 2] = out[3, 3] = -1j * c.a
        return out
    if k == 1:
        amp = cfg.g * sinc(theta)
    else:
        j0 = sph_bessel(0, theta)
        amp = (cfg.g**3 / 6.0) * (j0 + sph_bessel(2, theta) - j0**3)
    beta = amp * np.exp(1j * (cfg.phi + theta))
    out[0, 3] = out[1, 2] = beta
    out[2, 1] = out[3, 0] = np.conj(beta)
    return out


def _xy_arrays(k: int, cfg: PumpCrystalConfig, theta):
    """Block amplitudes (x, y) of the order-k transformation."""
    a, b = _coeff_arrays(k, cfg.g, theta)
    pair = entire_cosh_sinhc(b * b - a * a)
    x = np.exp(-1j * np.asarray(theta, float)) * (pair.c + 1j * a * pair.s)
    y = np.exp(1j * cfg.phi) * b * pair.s
    return x, y


def magnus_S_tilde(k: int, cfg: PumpCrystalConfig, theta: float, kappa: float = 0.0) -> Symplectic4:
    """Order-k approximated sideband transformation (exactly symplectic)."""
    _check_order(k)
    x, y = _xy_arrays(k, cfg, theta)
    return Symplectic4(build_s_tilde(x, y, kappa))


def magnus_params_grid(k: int, cfg: PumpCrystalConfig, thetas, kappas=None):
    """Vectorised order-k parameters over a theta grid.

    Same closed forms as :func:`magnus_params`; returns a dict with arrays
    ``r``, ``psi_L``, ``psi_0``, ``kappa`` and the mask ``defined``.
    """
    _check_order(k)
    thetas = np.asarray(thetas, dtype=float)
    kappas = np.zeros_like(thetas) if kappas is None else np.asarray(kappas, dtype=float)
    a, b = _coeff_arrays(k, cfg.g, thetas)
    pair = entire_cosh_sinhc(b * b - a * a)
    xmod = pair.c + 1j * a * pair.s  # modulus part of U_k; |xmod| = cosh(r)
    y = b * pair.s
    # r = ln(|U| + |V|) = asinh(|V|) since |xmod|^2 - |y|^2 = 1 identically.
    r = np.arcsinh(np.abs(y))
    defined = y != 0
    y_s = np.where(defined, y, 1.0)
    psi_L = 0.5 * np.angle(np.exp(1j * (cfg.phi - thetas)) * xmod * y_s)
    # psi_0 chosen so that reassembly reproduces the matrix exactly;
    # equals phi - psi_L up to a pi offset when b*S < 0 (mod pi always).
    psi_0 = np.angle(np.exp(1j * (psi_L + thetas)) * np.conj(xmod) / np.abs(xmod))
    psi_L = np.where(defined, psi_L, 0.0)
    psi_0 = np.where(defined, psi_0, 0.0)
    return {"r": r, "psi_L": psi_L, "psi_0": psi_0, "kappa": kappas, "defined": defined}


def magnus_params(k: int, cfg: PumpCrystalConfig, theta: float, kappa: float = 0.0) -> SqueezingParams:
    """Closed-form four parameters of the order-k approximation.

    The group-delay angle passes through unchanged (kappa_k = kappa for every
    order), and psi_0 + psi_L = phi modulo pi.
    """
    d = magnus_params_grid(k, cfg, np.asarray([theta], float), np.asarray([kappa], float))
    status = AngleStatus.DEFINED if bool(d["defined"][0]) else AngleStatus.INDETERMINATE
    return SqueezingParams(
        r=float(d["r"][0]), psi_L=float(d["psi_L"][0]), psi_0=float(d["psi_0"][0]),
        kappa=float(d["kappa"][0]), angle_status=status,
    )


def convergence_bound_ok(g: float) -> bool:
    """True iff g < pi, the sufficient bound for convergence of the expansion."""
    if g < 0:
        raise ValueError("gain exponent g must be >= 0")
    return bool(g < np.pi)
