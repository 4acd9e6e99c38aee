"""The oracles themselves: self-certification and convergence evidence."""

import numpy as np
import pytest

from pdcsqueeze.magnus import magnus_S_tilde, magnus_term
from pdcsqueeze.oracle import (
    IntegratorSpec,
    bloch_messiah_numeric,
    bm_reconstruction_defect,
    expm_numeric,
    magnus_term_quadrature,
    ode_propagate,
    ode_propagate_grid,
)
from pdcsqueeze.oracle import _rk4_pass
from pdcsqueeze.pdc_exact import PumpCrystalConfig, SqueezingParams, exact_AB
from pdcsqueeze.symplectic_bm import (
    Symplectic4,
    assemble_S_tilde,
    bloch_messiah,
    build_s_tilde,
    check_symplectic,
    coupling_matrix,
    phase_matrix,
)


class TestOdePropagate:
    def test_zero_coupling_gives_identity(self):
        s = ode_propagate(PumpCrystalConfig(g=0.0), 1.3)
        assert np.allclose(s.m, np.eye(4), atol=1e-14)

    def test_constant_coupling_closed_form(self):
        s = ode_propagate(PumpCrystalConfig(g=1.0), 0.0)
        c, sh = np.cosh(1.0), np.sinh(1.0)
        A, B = exact_AB(PumpCrystalConfig(g=1.0), 0.0)
        expected = build_s_tilde(A, B, 0.0)  # theta = 0: no extra phases
        assert np.max(np.abs(s.m - expected)) < 1e-11
        assert s.m[0, 0] == pytest.approx(c, abs=1e-11)
        assert s.m[0, 3] == pytest.approx(sh, abs=1e-11)

    def test_oracle_point_matches_closed_form(self):
        cfg = PumpCrystalConfig(g=1.84, phi=0.3)
        s = ode_propagate(cfg, 2.0)
        A, B = exact_AB(cfg, 2.0)
        assert s.m[0, 0] == pytest.approx(A, abs=1e-10)
        assert s.m[0, 3] == pytest.approx(B, abs=1e-10)

    def test_output_symplectic(self):
        s = ode_propagate(PumpCrystalConfig(g=2.5, phi=0.8), 5.0)
        assert check_symplectic(s) < 1e-9

    def test_fourth_order_convergence_ratio(self):
        # halving the step shrinks the defect by about 2^4
        cfg = PumpCrystalConfig(g=1.84, phi=0.2)
        delta = 2.0 * 3.0
        m1 = _rk4_pass(cfg.g, cfg.phi, delta, 128)
        m2 = _rk4_pass(cfg.g, cfg.phi, delta, 256)
        m3 = _rk4_pass(cfg.g, cfg.phi, delta, 512)
        e1 = np.max(np.abs(m2 - m1))
        e2 = np.max(np.abs(m3 - m2))
        assert 8.0 <= e1 / e2 <= 32.0

    def test_doubling_moves_result_below_tolerance_fraction(self):
        cfg = PumpCrystalConfig(g=1.84, phi=0.2)
        spec = IntegratorSpec(steps=64, richardson=False)
        s = ode_propagate(cfg, 3.0, spec)
        s2 = ode_propagate(cfg, 3.0, IntegratorSpec(steps=128, richardson=False))
        assert np.max(np.abs(s.m - s2.m)) < 1e-11  # both past certification

    def test_grid_matches_per_point_calls(self):
        gs = np.array([0.5, 1.84, 2.7])
        ths = np.array([-2.0, 0.7, 9.0])
        stack = ode_propagate_grid(gs, ths, phi=0.1)
        for i in range(3):
            single = ode_propagate(PumpCrystalConfig(g=gs[i], phi=0.1), ths[i])
            assert np.max(np.abs(stack[i] - single.m)) < 1e-11

    def test_spec_validation(self):
        with pytest.raises(ValueError, match="steps"):
            IntegratorSpec(steps=8)
        with pytest.raises(ValueError, match="scheme"):
            IntegratorSpec(scheme="Euler")


class TestExpmNumeric:
    def test_zero_matrix(self):
        assert np.allclose(expm_numeric(np.zeros((4, 4))), np.eye(4))

    def test_diagonal(self):
        e = expm_numeric(np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex))
        assert np.allclose(np.diag(e), np.exp([1, 2, 3, 4]), rtol=1e-13)

    def test_inverse_property_random_generators(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            # random symplectic generator: K H^dag K = -H
            b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            h = h + h.conj().T
            m = np.zeros((4, 4), complex)
            m[:2, :2] = 1j * h
            m[2:, 2:] = -1j * h.conj()
            m[:2, 2:] = b
            m[2:, :2] = np.conj(b)
            e = expm_numeric(m)
            assert np.max(np.abs(e @ expm_numeric(-m) - np.eye(4))) < 1e-11

    def test_magnus_sum_reference(self):
        cfg = PumpCrystalConfig(g=1.84)
        th, kap = 2.0, 0.0
        gen = sum(magnus_term(k, cfg, th) for k in (1, 2, 3))
        ref = phase_matrix(th, kap) @ expm_numeric(gen)
        st3 = magnus_S_tilde(3, cfg, th, kap)
        assert np.max(np.abs(st3.m - ref)) < 1e-13

    def test_rejects_nonfinite(self):
        m = np.zeros((4, 4))
        m[0, 0] = np.inf
        with pytest.raises(ValueError, match="finite"):
            expm_numeric(m)


class TestMagnusQuadrature:
    def test_first_order_matches_closed_form(self):
        cfg = PumpCrystalConfig(g=1.84, phi=0.3)
        q = magnus_term_quadrature(1, cfg, 2.0, panels=64)
        c = magnus_term(1, cfg, 2.0)
        assert np.max(np.abs(q - c)) < 1e-10

    def test_second_order_vanishes_at_zero_mismatch(self):
        cfg = PumpCrystalConfig(g=1.84)
        q = magnus_term_quadrature(2, cfg, 0.0, panels=32)
        assert np.max(np.abs(q)) < 1e-14

    def test_third_order_reference_point(self):
        cfg = PumpCrystalConfig(g=1.84)
        q = magnus_term_quadrature(3, cfg, 2.0, panels=32)
        c = magnus_term(3, cfg, 2.0)
        assert np.max(np.abs(q - c)) < 1e-12
        # frozen entry from the same certified run
        assert q[0, 3] == pytest.approx(-0.24157529516840981 + 0.52785164992214317j, abs=1e-12)

    def test_panel_doubling_converges(self):
        # a mismatch large enough to leave visible quadrature error at 32 panels
        cfg = PumpCrystalConfig(g=2.9, phi=0.4)
        th = 11.5
        c = magnus_term(2, cfg, th)
        e32 = np.max(np.abs(magnus_term_quadrature(2, cfg, th, panels=32) - c))
        e64 = np.max(np.abs(magnus_term_quadrature(2, cfg, th, panels=64) - c))
        assert e64 <= e32

    def test_rejects_low_panel_count(self):
        with pytest.raises(ValueError, match="panels"):
            magnus_term_quadrature(1, PumpCrystalConfig(g=1.0), 0.0, panels=16)

    def test_uses_own_coupling_construction(self):
        # the quadrature's F agrees with the module-level coupling matrix
        from pdcsqueeze.oracle import _coupling_stack

        cfg = PumpCrystalConfig(g=1.3, phi=0.5)
        delta = 1.7
        for z in (0.0, 0.3, 0.9):
            a = _coupling_stack(np.asarray(z), cfg.g * np.exp(1j * cfg.phi), delta)
            b = coupling_matrix(cfg, delta, z)
            assert np.max(np.abs(a - b)) < 1e-15


class TestBlochMessiahNumeric:
    def test_identity(self):
        f = bloch_messiah_numeric(Symplectic4(np.eye(4, dtype=complex)))
        assert f.r == pytest.approx(0.0, abs=1e-12)
        assert f.unitarity_defect() < 1e-12

    def test_unit_squeezer(self):
        p = SqueezingParams(r=1.0, psi_L=0.0, psi_0=0.0, kappa=0.0)
        f = bloch_messiah_numeric(assemble_S_tilde(p))
        assert f.r == pytest.approx(1.0, abs=1e-12)

    def test_reconstruction_and_r_agreement(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = SqueezingParams(
                r=float(rng.uniform(0, np.pi)),
                psi_L=float(rng.uniform(-np.pi, np.pi)),
                psi_0=float(rng.uniform(-np.pi, np.pi)),
                kappa=float(rng.uniform(-np.pi, np.pi)),
            )
            st = assemble_S_tilde(p)
            f = bloch_messiah_numeric(st)
            assert bm_reconstruction_defect(st, f) < 1e-8
            assert abs(f.r - bloch_messiah(p).r) < 1e-8

    def test_exact_transformation_reference(self):
        from pdcsqueeze.pdc_exact import exact_params

        p = exact_params(PumpCrystalConfig(g=1.84, phi=0.3), 2.0)
        st = assemble_S_tilde(p)
        f = bloch_messiah_numeric(st)
        assert abs(f.r - p.r) < 1e-8

    def test_rejects_nonsymplectic(self):
        with pytest.raises(ValueError, match="symplectic"):
            bloch_messiah_numeric(np.diag([2.0, 1.0, 1.0, 1.0]).astype(complex))

    def test_singular_value_pairing(self):
        for k in (1, 2, 3):
            st = magnus_S_tilde(k, PumpCrystalConfig(g=1.84), 1.7)
            sv = np.linalg.svd(st.m, compute_uv=False)
            assert sv[0] == pytest.approx(sv[1], rel=1e-12)
            assert sv[2] == pytest.approx(sv[3], rel=1e-12)
            assert sv[0] * sv[3] == pytest.approx(1.0, abs=1e-12)
