"""Tests for the window function and the emission amplitude."""

import math

import numpy as np
import pytest

from ld_shift.errors import ResolutionError, WindowError
from ld_shift.numerics import composite_rule
from ld_shift.qshift import (
    EmissionAmplitude,
    WindowFunction,
    amplitude_direct,
    amplitude_ibp,
    four_velocity_xi,
    ibp_amplitudes,
    poly_fourier,
    soft_limit,
    soft_limit_extrapolation,
    spectral_density,
)
from ld_shift.qshift.window import CLOSED_FORM_MIN, ROLLOFF


def numeric_transform(func, lo, hi, k, panels=400):
    xi, w = composite_rule(np.linspace(lo, hi, panels + 1), 16)
    return np.sum(func(xi) * np.exp(1j * k * xi) * w)


class TestWindowFunction:
    def setup_method(self):
        self.window = WindowFunction(xi_a=-3.0, xi_b=1.0, rolloff=2.0)

    def test_values(self):
        chi = self.window(np.array([-6.0, -5.0, -4.0, -3.0, 0.0, 1.0, 2.0, 3.0, 4.0]))
        np.testing.assert_allclose(chi, [0.0, 0.0, 0.5, 1.0, 1.0, 1.0, 0.5, 0.0, 0.0], atol=1e-15)

    def test_derivative(self):
        xi = np.linspace(-4.9, 2.9, 17)
        h = 1e-6
        numeric = (self.window(xi + h) - self.window(xi - h)) / (2 * h)
        np.testing.assert_allclose(self.window.derivative(xi), numeric, atol=1e-8)

    @pytest.mark.parametrize("k", [0.3, 2.5, 20.0])
    def test_transform(self, k):
        expected = numeric_transform(self.window, *self.window.extent, k)
        assert abs(self.window.transform(k) - expected) < 1e-11 * max(1.0, abs(expected))

    @pytest.mark.parametrize("k", [0.3, 20.0])
    def test_rolloff_transforms(self, k):
        left, right = self.window.rolloff_transforms(k)
        lo, hi = self.window.extent
        expected_left = numeric_transform(self.window.derivative, lo, self.window.xi_a, k)
        expected_right = numeric_transform(self.window.derivative, self.window.xi_b, hi, k)
        assert abs(left - expected_left) < 1e-11
        assert abs(right - expected_right) < 1e-11

    def test_rolloff_transforms_soft(self):
        left, right = self.window.rolloff_transforms(1e-9)
        assert left == pytest.approx(1.0)
        assert right == pytest.approx(-1.0)

    def test_poly_fourier_branches_meet(self):
        below = poly_fourier(ROLLOFF, CLOSED_FORM_MIN * (1 - 1e-12))
        above = poly_fourier(ROLLOFF, CLOSED_FORM_MIN * (1 + 1e-12))
        assert abs(below - above) < 1e-9

    def test_poly_fourier_zero_frequency(self):
        assert complex(poly_fourier(ROLLOFF, 0.0)) == pytest.approx(0.5)

    def test_covers_acceleration_image(self, traj):
        window = WindowFunction.for_trajectory(traj)
        for c in (-1.0, 0.0, 1.0):
            assert window.covers(traj.t_start - traj.z_lo * c, traj.t_end - traj.z_hi * c)
        assert window.to_dict()["rolloff"] == traj.config.window_rolloff

    def test_rejects_bad_geometry(self):
        with pytest.raises(ValueError):
            WindowFunction(xi_a=1.0, xi_b=0.0, rolloff=1.0)
        with pytest.raises(ValueError):
            WindowFunction(xi_a=0.0, xi_b=1.0, rolloff=0.0)


class TestEmissionAmplitude:
    def test_neutral_particle(self, neutral_traj):
        amplitude = amplitude_ibp(neutral_traj, 2.0, 0.3)
        assert amplitude.A_t == 0.0 and amplitude.A_z == 0.0

    @pytest.mark.parametrize("c", [-0.7, 0.0, 0.6])
    def test_free_particle_is_window_transform(self, free_traj, c):
        k = 3.0
        window = WindowFunction.for_trajectory(free_traj)
        u = four_velocity_xi(free_traj.velocity_out, c)
        expected = -free_traj.particle.charge * u * window.transform(k)
        for amplitude in (amplitude_direct(free_traj, k, c, window), amplitude_ibp(free_traj, k, c, window)):
            np.testing.assert_allclose(amplitude.vector, expected, rtol=1e-8, atol=1e-12)

    def test_forms_agree(self, traj):
        direct = amplitude_direct(traj, 5.0, 0.3)
        ibp = amplitude_ibp(traj, 5.0, 0.3)
        assert direct.form == "direct" and ibp.form == "ibp"
        assert direct.difference(ibp) <= 1e-6

    def test_forms_agree_for_wider_window(self, traj):
        window = WindowFunction.for_trajectory(traj, pad=3.0, rolloff=6.0)
        direct = amplitude_direct(traj, 1.5, -0.4, window)
        ibp = amplitude_ibp(traj, 1.5, -0.4, window)
        assert direct.difference(ibp) <= 1e-6

    def test_batch_matches_single(self, traj):
        window = WindowFunction.for_trajectory(traj)
        c = np.array([-0.5, 0.2, 0.9])
        batch = ibp_amplitudes(traj, 4.0, c, window)
        assert batch.shape == (2, 3)
        single = amplitude_ibp(traj, 4.0, 0.2, window)
        np.testing.assert_allclose(batch[:, 1], single.vector, rtol=1e-9)

    def test_window_must_cover_image(self, traj):
        narrow = WindowFunction(xi_a=traj.t_start, xi_b=traj.t_end, rolloff=1.0)
        with pytest.raises(WindowError):
            amplitude_ibp(traj, 1.0, 0.5, narrow)
        with pytest.raises(WindowError):
            amplitude_direct(traj, 1.0, 0.5, narrow)

    def test_resolution_budget(self, traj):
        with pytest.raises(ResolutionError) as exc:
            amplitude_ibp(traj, 1e5, 0.3)
        assert 0.0 < exc.value.suggested_k_max < 1e5

    def test_rejects_non_positive_k(self, traj):
        with pytest.raises(ValueError):
            amplitude_ibp(traj, 0.0, 0.3)


class TestSpectralDensity:
    def test_formula(self):
        window = WindowFunction(xi_a=-1.0, xi_b=0.0, rolloff=1.0)
        amplitude = EmissionAmplitude(k=2.0, cos_theta=0.0, A_t=1j, A_z=2.0 + 0j, window=window)
        assert spectral_density(amplitude) == pytest.approx(12.0 / (8.0 * math.pi**2))

    def test_four_velocity_norm(self):
        v, c = 0.6, 0.4
        u_t, u_z = four_velocity_xi(v, c)
        assert u_t**2 - u_z**2 == pytest.approx((1 - v * v) / (1 - v * c) ** 2)


class TestSoftLimit:
    def test_forward_direction(self, traj):
        S = soft_limit(traj, 0.0)
        e = traj.particle.charge
        assert S[0] == pytest.approx(0.0, abs=1e-15)
        assert S[1] == pytest.approx(e * (traj.velocity_out - traj.velocity_in), rel=1e-14)

    def test_no_potential(self, free_traj):
        np.testing.assert_allclose(soft_limit(free_traj, 0.4), 0.0, atol=1e-15)

    @pytest.mark.parametrize("c", [0.5, -0.3])
    def test_extrapolation(self, traj, c):
        S = soft_limit(traj, c)
        extrapolated = soft_limit_extrapolation(traj, c)
        scale = max(np.linalg.norm(S), traj.particle.charge)
        assert np.linalg.norm(extrapolated - S) / scale < 1e-3
