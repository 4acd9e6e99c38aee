"""4x4 complex symplectic formalism and the Bloch-Messiah decomposition.

The sideband operators are collected in the column vector
(eps(+O), eps(-O), eps^dag(+O), eps^dag(-O)); a Gaussian evolution acts as a
4x4 complex matrix S with the block structure

    S = [[x * Lam,            y * Lam @ P       ],
         [conj(y) * Lam* @ P, conj(x) * Lam*    ]],

where Lam = diag(e^{i kappa}, e^{-i kappa}) and P swaps the two sidebands.
Commutator preservation is the K-symplectic condition S K S^dag = K with
K = diag(1, 1, -1, -1).

The Bloch-Messiah decomposition factors S = V D(r) W^dag into passive
unitaries V, W (block-diagonal in 2x2 blocks) and the single-mode squeezer
D(r).  Its 2x2 blocks have the closed forms

    V2 = e^{i psi_L}/sqrt(2) * diag(e^{i kappa}, e^{-i kappa}) @ [[1, i], [1, -i]],
    W2 = e^{i psi_0}/sqrt(2) * [[1, i], [1, -i]].

The squeezing eigenmodes that diagonalise the transformation are bichromatic
cosine/sine beats of the two sidebands; their envelopes are sampled here.

Matrices are immutable by convention; everything is pure and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pdc_exact import BogoliubovPair, PumpCrystalConfig, SqueezingParams

__all__ = [
    "K_METRIC",
    "Symplectic4",
    "BlochMessiahFactors",
    "coupling_matrix",
    "build_s_tilde",
    "phase_matrix",
    "assemble_S_tilde",
    "check_symplectic",
    "pair_from_matrix",
    "bloch_messiah",
    "bm_reconstruct",
    "squeezer_matrix",
    "eigenmode_sample",
    "quadrature_map",
]

K_METRIC = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)

_P = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_HALF_DFT = np.array([[1.0, 1.0j], [1.0, -1.0j]], dtype=complex) / np.sqrt(2.0)


@dataclass(frozen=True)
class Symplectic4:
    """A 4x4 complex matrix in the sideband-pair basis.

    Carrier for exact and Magnus-approximated transformations.  Invariants
    (checked by :func:`check_symplectic` / :meth:`validate`, not on
    construction, because discretisation-limited oracle outputs carry a small
    residual): m K m^dag = K, and the lower blocks are the conjugates of the
    upper ones.
    """

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        object.__setattr__(self, "m", m)

    def validate(self, tol: float = 1e-12) -> "Symplectic4":
        res = check_symplectic(self)
        if res > tol:
            raise ValueError(f"matrix is not K-symplectic: residual {res:.3e} > {tol:.1e}")
        c = self.conjugation_defect()
        if c > tol:
            raise ValueError(f"conjugation block symmetry violated by {c:.3e}")
        return self

    def conjugation_defect(self) -> float:
        """Max deviation of the lower blocks from the conjugated upper blocks."""
        m = self.m
        d1 = np.max(np.abs(m[2:, 2:] - np.conj(m[:2, :2])))
        d2 = np.max(np.abs(m[2:, :2] - np.conj(m[:2, 2:])))
        return float(max(d1, d2))


@dataclass(frozen=True)
class BlochMessiahFactors:
    """2x2 unitary blocks V2, W2 and the squeezing parameter r >= 0."""

    V2: np.ndarray
    W2: np.ndarray
    r: float

    def unitarity_defect(self) -> float:
        dv = np.max(np.abs(self.V2 @ self.V2.conj().T - np.eye(2)))
        dw = np.max(np.abs(self.W2 @ self.W2.conj().T - np.eye(2)))
        return float(max(dv, dw))


def coupling_matrix(cfg: PumpCrystalConfig, delta: float, z: float) -> np.ndarray:
    """Coupling matrix F(z) driving d/dz xi = -i F xi.

    ``delta`` is the phase-mismatch rate Delta (radians per unit length), so
    theta = delta * L / 2.  F satisfies K F^dag K = F, which guarantees that
    the generated flow is symplectic, and its spectral norm is |sigma| = g/L.
    """
    if not 0.0 <= z <= cfg.L:
        raise ValueError(f"z={z} outside the crystal [0, {cfg.L}]")
    sigma = (cfg.g / cfg.L) * np.exp(1j * cfg.phi)
    F = np.zeros((4, 4), dtype=complex)
    F[:2, 2:] = 1j * sigma * np.exp(1j * delta * z) * _P
    F[2:, :2] = 1j * np.conj(sigma) * np.exp(-1j * delta * z) * _P
    return F


def build_s_tilde(x, y, kappa) -> np.ndarray:
    """Assemble [[x Lam, y Lam P], [conj(y) Lam* P, conj(x) Lam*]].

    ``x`` and ``y`` are the scalar diagonal/antidiagonal amplitudes
    (for the exact solution x = A e^{-i theta}, y = B e^{-i theta}).
    Broadcasts over leading array dimensions and returns shape (..., 4, 4).
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    kappa = np.asarray(kappa, dtype=float)
    lam = np.exp(1j * kappa)
    shape = np.broadcast_shapes(x.shape, y.shape, kappa.shape)
    out = np.zeros(shape + (4, 4), dtype=complex)
    out[..., 0, 0] = x * lam
    out[..., 1, 1] = x * np.conj(lam)
    out[..., 0, 3] = y * lam
    out[..., 1, 2] = y * np.conj(lam)
    out[..., 2, 1] = np.conj(y * lam)
    out[..., 3, 0] = np.conj(y * np.conj(lam))
    out[..., 2, 2] = np.conj(x * lam)
    out[..., 3, 3] = np.conj(x * np.conj(lam))
    return out


def phase_matrix(theta, kappa) -> np.ndarray:
    """Diagonal sideband phase matrix Phi_L for degenerate phase matching.

    Phi_L = diag(e^{i dk+}, e^{i dk-}, e^{-i dk+}, e^{-i dk-}) with
    dk(+-Omega)*L = +-kappa - theta.
    """
    dp = kappa - theta
    dm = -kappa - theta
    return np.diag(np.exp(1j * np.array([dp, dm, -dp, -dm])))


def assemble_S_tilde(p: SqueezingParams) -> Symplectic4:
    """Symplectic matrix of the Bogoliubov transformation with parameters p."""
    x = np.exp(1j * (p.psi_L - p.psi_0)) * np.cosh(p.r)
    y = np.exp(1j * (p.psi_L + p.psi_0)) * np.sinh(p.r)
    return Symplectic4(build_s_tilde(x, y, p.kappa))


def check_symplectic(s) -> float:
    """Residual max|S K S^dag - K| (0 for exactly symplectic matrices).

    Accepts a :class:`Symplectic4`, a 4x4 array, or a stack (..., 4, 4).
    """
    m = s.m if isinstance(s, Symplectic4) else np.asarray(s, dtype=complex)
    res = m @ K_METRIC @ np.conj(np.swapaxes(m, -1, -2)) - K_METRIC
    return float(np.max(np.abs(res)))


def pair_from_matrix(s) -> BogoliubovPair:
    """Read the Bogoliubov coefficients back out of a symplectic matrix."""
    m = s.m if isinstance(s, Symplectic4) else np.asarray(s, dtype=complex)
    return BogoliubovPair(
        U_plus=complex(m[0, 0]), V_plus=complex(m[0, 3]),
        U_minus=complex(m[1, 1]), V_minus=complex(m[1, 2]),
    )


def bloch_messiah(p: SqueezingParams) -> BlochMessiahFactors:
    """Closed-form Bloch-Messiah factors of the transformation with params p."""
    lam = np.diag([np.exp(1j * p.kappa), np.exp(-1j * p.kappa)])
    V2 = np.exp(1j * p.psi_L) * lam @ _HALF_DFT
    W2 = np.exp(1j * p.psi_0) * _HALF_DFT
    return BlochMessiahFactors(V2=V2, W2=W2, r=p.r)


def squeezer_matrix(r: float) -> np.ndarray:
    """The 4x4 single-mode squeezer D(r) = [[cosh r I, sinh r I], [sinh r I, cosh r I]]."""
    eye = np.eye(2)
    return np.block([[np.cosh(r) * eye, np.sinh(r) * eye],
                     [np.sinh(r) * eye, np.cosh(r) * eye]]).astype(complex)


def bm_reconstruct(f: BlochMessiahFactors) -> np.ndarray:
    """Embed the factors and form V D(r) W^dag; reproduces the source matrix."""
    zero = np.zeros((2, 2), dtype=complex)
    V = np.block([[f.V2, zero], [zero, np.conj(f.V2)]])
    W = np.block([[f.W2, zero], [zero, np.conj(f.W2)]])
    return V @ squeezer_matrix(f.r) @ W.conj().T


def _beat_envelope(omega: float, kappa: float, psi_L: float, mode: str, t):
    """Eigenmode envelope with the carrier reference phase set to zero.

    Signed ``omega`` is allowed here; the public sampler restricts to
    omega >= 0 because negative-frequency eigenmodes are linearly dependent
    on the positive-frequency ones.
    """
    t = np.asarray(t, dtype=float)
    beat = np.cos(omega * t - kappa) if mode == "cos" else np.sin(omega * t - kappa)
    out = (np.sqrt(2.0) / (2.0 * np.pi)) * np.exp(-1j * psi_L) * beat
    return out if out.ndim else complex(out)


def eigenmode_sample(p: SqueezingParams, omega: float, mode: str, t):
    """Sample the cosine or sine squeezing-eigenmode envelope at time t.

    Returns sqrt(2)/(2 pi) * e^{-i psi_L} * cos(omega t - kappa) for the
    cosine mode (sin for the sine mode).  The optical carrier factor
    e^{-i(k0 z - w0 t)} is dropped: the sampling reference phase is 0 and no
    observable in this package depends on it.

    Raises
    ------
    ValueError
        For negative ``omega`` or an unknown mode name.
    """
    if omega < 0:
        raise ValueError("eigenmode frequencies are restricted to omega >= 0")
    if mode not in ("cos", "sin"):
        raise ValueError(f"mode must be 'cos' or 'sin', got {mode!r}")
    return _beat_envelope(omega, p.kappa, p.psi_L, mode, t)


def quadrature_map(p: SqueezingParams) -> tuple[float, float]:
    """Scale factors (e^r, e^{-r}) applied to the eigenmode position/momentum."""
    return float(np.exp(p.r)), float(np.exp(-p.r))
