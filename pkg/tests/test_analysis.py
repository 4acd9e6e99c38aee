"""Comparison studies: gain boundary, dB, sweeps, Taylor tables, deviations."""

import numpy as np
import pytest

from pdcsqueeze.analysis import (
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
from pdcsqueeze.pdc_exact import PumpCrystalConfig
from pdcsqueeze.specfun import sph_bessel

# frozen after an RK4-oracle-verified run
R_EXACT_HALFPI_G184 = 1.5023419880967477
DEV_S_MA1_G115 = 0.15683666418084108
DEV_PSI_MA1_G115 = 0.18798518117472796
ZETA_1 = 0.27267564329357957615  # extended-precision evaluation


class TestUltraHighGainDistance:
    def test_zero(self):
        assert ultra_high_gain_distance(0.0) == 0.0

    def test_boundary_value(self):
        assert ultra_high_gain_distance(1.44) == pytest.approx(0.100, abs=1e-3)

    def test_at_pi(self):
        assert ultra_high_gain_distance(np.pi) == pytest.approx(np.sqrt(2) - 1, abs=1e-14)

    def test_closed_form_and_monotonicity(self):
        g = np.linspace(0, 4, 200)
        d = np.array([ultra_high_gain_distance(x) for x in g])
        assert np.max(np.abs(d - (np.sqrt((g / np.pi) ** 2 + 1) - 1))) < 1e-14
        assert np.all(np.diff(d) > 0)


class TestDecibels:
    @pytest.mark.parametrize(
        "r,quoted",
        [(1.84, 16.0), (0.7, 6.0), (1.15, 10.0), (1.44, 12.5), (np.pi, 27.0)],
    )
    def test_quoted_pairs(self, r, quoted):
        assert abs(squeezing_db(r) - quoted) < 0.4

    def test_precise_values(self):
        assert squeezing_db(1.84) == pytest.approx(15.982037, abs=1e-5)
        assert squeezing_db(1.15) == pytest.approx(9.9887731, abs=1e-5)
        assert squeezing_db(1.44) == pytest.approx(12.507681, abs=1e-5)

    def test_zero_and_monotone(self):
        assert squeezing_db(0.0) == 0.0
        r = np.linspace(0, 3, 50)
        assert np.all(np.diff(squeezing_db(r)) > 0)


class TestGainSweep:
    def test_identity_at_zero_mismatch(self):
        g = np.linspace(0, np.pi, 30)
        sweep = gain_sweep(0.0, g)
        for sol, r in sweep.curves.items():
            assert np.allclose(r, g, atol=1e-12), sol

    def test_first_order_linear(self):
        g = np.linspace(0, 3.0, 20)
        sweep = gain_sweep(np.pi / 2, g, solutions=("ma1",))
        assert np.allclose(sweep.curves["ma1"], g * (2 / np.pi), atol=1e-14)

    def test_exact_oracle_point(self):
        sweep = gain_sweep(np.pi / 2, np.array([1.84]), solutions=("exact",))
        assert sweep.curves["exact"][0] == pytest.approx(R_EXACT_HALFPI_G184, abs=1e-10)

    def test_warns_beyond_pi(self):
        with pytest.warns(UserWarning, match="convergence"):
            gain_sweep(1.0, np.array([0.5, 3.5]), solutions=("ma1",))

    def test_rejects_negative_gain(self):
        with pytest.raises(ValueError):
            gain_sweep(1.0, np.array([-0.5, 0.5]))


class TestTaylor:
    def test_zeta_value(self):
        assert zeta(1.0) == pytest.approx(ZETA_1, abs=1e-15)

    def test_reference_table_r(self):
        j0 = sph_bessel(0, 1.0)
        j2 = sph_bessel(2, 1.0)
        for sol in ("exact", "ma1", "ma2", "ma3"):
            assert taylor_reference("r", sol, 1, 1.0) == j0
            assert taylor_reference("r", sol, 2, 1.0) == 0.0
            assert taylor_reference("r", sol, 4, 1.0) == 0.0
        assert taylor_reference("r", "exact", 3, 1.0) == pytest.approx(j0 - j0**3 + j2)
        assert taylor_reference("r", "ma3", 3, 1.0) == pytest.approx(j0 - j0**3 + j2)
        assert taylor_reference("r", "ma1", 3, 1.0) == 0.0
        assert taylor_reference("r", "ma2", 3, 1.0) == 0.0

    def test_reference_table_psi(self):
        for sol in ("exact", "ma1", "ma2", "ma3"):
            assert taylor_reference("psi_L", sol, 0, 1.0) == -0.5
            assert taylor_reference("psi_L", sol, 1, 1.0) == 0.0
            assert taylor_reference("psi_L", sol, 3, 1.0) == 0.0
        assert taylor_reference("psi_L", "ma1", 2, 1.0) == 0.0
        for sol in ("exact", "ma2", "ma3"):
            assert taylor_reference("psi_L", sol, 2, 1.0) == pytest.approx(zeta(1.0))

    def test_extract_r_first_order(self):
        rep = taylor_extract("r", "exact", 1.0, 1)
        assert rep.estimates[1] == pytest.approx(sph_bessel(0, 1.0), abs=1e-6)

    def test_extract_r_second_order_vanishes(self):
        rep = taylor_extract("r", "exact", 1.0, 2)
        assert abs(rep.estimates[2]) < 1e-6

    def test_extract_psi_second_order_zeta(self):
        rep = taylor_extract("psi_L", "exact", 1.0, 2)
        assert rep.estimates[2] == pytest.approx(zeta(1.0), abs=1e-6)

    def test_uncertainties_are_bounds(self):
        rep = taylor_extract("r", "exact", 1.0, 4)
        for k in rep.orders:
            assert rep.uncertainties[k] >= 0.0

    def test_ma2_matches_ma1_references_through_fourth_order(self):
        # second order adds no gain correction through g^4
        for k in (1, 2, 3, 4):
            assert taylor_reference("r", "ma2", k, 0.8) == taylor_reference("r", "ma1", k, 0.8)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            taylor_extract("q", "exact", 1.0, 2)
        with pytest.raises(ValueError):
            taylor_extract("r", "exact", 1.0, 5)
        with pytest.raises(ValueError):
            taylor_extract("r", "nope", 1.0, 2)


class TestDeviationMetrics:
    def test_self_comparison_is_zero(self):
        cfg = PumpCrystalConfig(g=1.84)
        m = deviation_metrics("exact", "exact", cfg, default_theta_grid(501))
        assert m == {"max_abs_s": 0.0, "max_abs_psi": 0.0}

    def test_third_order_closer_than_first(self):
        cfg = PumpCrystalConfig(g=1.84)
        grid = default_theta_grid()
        m1 = deviation_metrics("exact", "ma1", cfg, grid)
        m3 = deviation_metrics("exact", "ma3", cfg, grid)
        assert m3["max_abs_s"] < m1["max_abs_s"]

    def test_golden_values_moderate_gain(self):
        cfg = PumpCrystalConfig(g=1.15)
        m = deviation_metrics("exact", "ma1", cfg, default_theta_grid())
        assert m["max_abs_s"] == pytest.approx(DEV_S_MA1_G115, abs=1e-9)
        assert m["max_abs_psi"] == pytest.approx(DEV_PSI_MA1_G115, abs=1e-9)


class TestFirstZero:
    def test_exact_zero_location(self):
        cfg = PumpCrystalConfig(g=1.84)
        grid = default_theta_grid()
        step = grid[1] - grid[0]
        z = first_zero("exact", cfg, grid)
        assert abs(z - np.sqrt(1.84**2 + np.pi**2)) <= step

    def test_first_order_zero_at_pi(self):
        cfg = PumpCrystalConfig(g=1.84)
        z = first_zero("ma1", cfg, default_theta_grid())
        assert abs(z - np.pi) < 1e-9

    def test_no_zero_raises(self):
        cfg = PumpCrystalConfig(g=1.0)
        with pytest.raises(ValueError, match="no zero"):
            first_zero("exact", cfg, np.linspace(-1.0, 1.0, 101))


class TestCurves:
    def test_spectrum_curve_shapes(self):
        cfg = PumpCrystalConfig(g=1.84)
        grid = default_theta_grid(801)
        s, psi = spectrum_curve("exact", cfg, grid)
        assert s.shape == psi.shape == grid.shape
        assert np.all((s > 0) & (s <= 1 + 1e-15))

    def test_params_grid_rejects_unknown(self):
        with pytest.raises(ValueError, match="solution"):
            params_grid("ma7", PumpCrystalConfig(g=1.0), np.array([0.0]))
