"""Numerically stable elementary special functions.

Everything downstream is expressed through three primitives:

* ``sinc(x) = sin(x)/x``,
* the spherical Bessel functions ``j_0, j_1, j_2``,
* the entire-function pair ``C(u) = cosh(sqrt(u))``, ``S(u) = sinh(sqrt(u))/sqrt(u)``.

The pair (C, S) is evaluated as a function of ``u`` only, so the case split
"real versus imaginary square root" never appears explicitly: for ``u < 0``
the same functions smoothly become ``cos`` and ``sin``-based.  All three
primitives fall back to short Taylor series near the origin, where the naive
closed forms lose digits to cancellation; each function's series window is
sized so that both branches carry full double precision at the switch point.

All functions accept scalars or numpy arrays and are pure (thread-safe).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["EntirePair", "sinc", "sph_bessel", "entire_cosh_sinhc"]

# Series windows sized per function so that BOTH branches carry full double
# precision at the switch point.  sinc has no cancellation, so its window
# only guards the 0/0 limit.  The closed forms for j1 and j2 subtract terms
# of size 1/x and 3/x**2, so their cancellation zones extend to ~0.03 and
# ~0.12 respectively; the Taylor truncation stays below 1e-15 relative at
# those thresholds with the term counts used below.
_SERIES_X_SINC = 1e-3
_SERIES_X_J1 = 0.03
_SERIES_X_J2 = 0.12
# Threshold in u = x**2 for the (C, S) pair (whose closed form is stable; the
# window only avoids the removable singularity of sinh(w)/w at w = 0).
_SERIES_U = 1e-6


@dataclass(frozen=True)
class EntirePair:
    """Values ``c = cosh(sqrt(u))`` and ``s = sinh(sqrt(u))/sqrt(u)``.

    Satisfies the hyperbolic identity ``c**2 - u * s**2 = 1`` for the ``u``
    it was evaluated at.
    """

    c: complex | float | np.ndarray
    s: complex | float | np.ndarray

    def identity_defect(self, u) -> float:
        """Max deviation of ``c**2 - u*s**2`` from 1, normalised by max(1, |c|^2).

        The normalisation keeps the defect meaningful for large positive u,
        where c^2 exceeds 1e8 and an absolute comparison would only measure
        double-precision granularity.
        """
        scale = np.maximum(1.0, np.abs(self.c) ** 2)
        return float(np.max(np.abs(self.c**2 - u * self.s**2 - 1.0) / scale))


def _poly4(u, c0, c1, c2, c3):
    # Horner evaluation of a 4-term series in u.
    return c0 + u * (c1 + u * (c2 + u * c3))


def sinc(x):
    """sin(x)/x, total on finite reals, even, with a series branch near 0.

    Series branch (|x| <= 1e-3): 1 - x^2/6 + x^4/120 - x^6/5040.
    """
    x = np.asarray(x, dtype=float)
    u = x * x
    small = np.abs(x) <= _SERIES_X_SINC
    series = _poly4(u, 1.0, -1.0 / 6.0, 1.0 / 120.0, -1.0 / 5040.0)
    xs = np.where(small, 1.0, x)  # safe divisor
    out = np.where(small, series, np.sin(xs) / xs)
    return out if out.ndim else float(out)


def sph_bessel(m: int, x):
    """Spherical Bessel function ``j_m(x)`` for m in {0, 1, 2}.

    Closed forms away from the origin; Taylor series inside each order's
    cancellation window (see the thresholds at the top of the module).
    Parities: j0 and j2 even, j1 odd.

    Raises
    ------
    ValueError
        If ``m`` is not 0, 1 or 2.
    """
    if m not in (0, 1, 2):
        raise ValueError(f"unsupported spherical Bessel order m={m!r}; need m in {{0, 1, 2}}")
    x = np.asarray(x, dtype=float)
    if m == 0:
        return sinc(x)
    u = x * x
    small = np.abs(x) <= (_SERIES_X_J1 if m == 1 else _SERIES_X_J2)
    xs = np.where(small, 1.0, x)  # safe divisor
    if m == 1:
        series = x * _poly4(u, 1.0 / 3.0, -1.0 / 30.0, 1.0 / 840.0, -1.0 / 45360.0)
        direct = (np.sin(xs) / xs - np.cos(xs)) / xs
    else:
        series = u * (
            _poly4(u, 1.0 / 15.0, -1.0 / 210.0, 1.0 / 7560.0, -1.0 / 498960.0)
            + u**4 * (1.0 / 51891840.0 - u / 7783776000.0)
        )
        direct = (3.0 / (xs * xs) - 1.0) * np.sin(xs) / xs - 3.0 * np.cos(xs) / (xs * xs)
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def entire_cosh_sinhc(u) -> EntirePair:
    """Evaluate ``(cosh(sqrt(u)), sinh(sqrt(u))/sqrt(u))`` as entire functions of u.

    Both components are entire, so the result is branch-free: for negative
    real ``u`` it equals ``(cos(sqrt(-u)), sin(sqrt(-u))/sqrt(-u))``.  Complex
    ``u`` is supported (the principal square root is immaterial because both
    functions are even in ``sqrt(u)``).

    Series branch (|u| <= 1e-6):
        c = 1 + u/2 + u^2/24 + u^3/720,  s = 1 + u/6 + u^2/120 + u^3/5040.
    """
    u = np.asarray(u)
    if not np.iscomplexobj(u):
        u = u.astype(float)
    small = np.abs(u) <= _SERIES_U
    c_series = _poly4(u, 1.0, 0.5, 1.0 / 24.0, 1.0 / 720.0)
    s_series = _poly4(u, 1.0, 1.0 / 6.0, 1.0 / 120.0, 1.0 / 5040.0)
    if np.iscomplexobj(u):
        w = np.sqrt(np.where(small, 1.0, u))
        c_direct = np.cosh(w)
        s_direct = np.sinh(w) / w
    else:
        # Real u: use cosh/cos explicitly to stay in real arithmetic.
        up = np.where(small | (u < 0), 1.0, u)
        un = np.where(small | (u > 0), 1.0, -u)
        wp = np.sqrt(up)
        wn = np.sqrt(un)
        c_direct = np.where(u > 0, np.cosh(wp), np.cos(wn))
        s_direct = np.where(u > 0, np.sinh(wp) / wp, np.sin(wn) / wn)
    c = np.where(small, c_series, c_direct)
    s = np.where(small, s_series, s_direct)
    if c.ndim == 0:
        c, s = c[()], s[()]
    return EntirePair(c=c, s=s)
