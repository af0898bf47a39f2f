"""Tests for the xi = t - z cos(theta) reparameterization."""

import numpy as np
import pytest

from ld_shift.errors import SpanError
from ld_shift.trajectory import XiFrame, dzdp_at_z, xi_frame


class TestForwardDirection:
    """cos(theta) = 0 makes xi coincide with t."""

    def setup_method(self):
        self.z = np.linspace(-2.4, -0.2, 12)

    def test_identities(self, traj):
        k = xi_frame(traj, 0.0).evaluate_z(self.z)
        s = traj.state(self.z)
        np.testing.assert_allclose(k.xi, k.t)
        np.testing.assert_allclose(k.dt_dxi, 1.0)
        np.testing.assert_allclose(k.dz_dxi, s.zdot)
        np.testing.assert_allclose(k.d2z_dxi2, s.zddot)
        assert np.all(k.d2t_dxi2 == 0.0)

    def test_momentum_partial_is_fixed_time_partial(self, traj):
        k = xi_frame(traj, 0.0).evaluate_z(self.z)
        value, rate = dzdp_at_z(traj, self.z)
        np.testing.assert_allclose(k.dzdp_xi, value)
        np.testing.assert_allclose(k.dp_dz_dxi, rate)


class TestOblique:
    c = 0.5

    def test_time_second_derivative(self, traj):
        k = XiFrame(traj, self.c).evaluate_z(np.linspace(-2.0, -1.0, 9))
        np.testing.assert_allclose(k.d2t_dxi2, self.c * k.d2z_dxi2, rtol=1e-15)
        np.testing.assert_allclose(k.dtdp_xi, self.c * k.dzdp_xi, rtol=1e-15)

    def test_chain_rule(self, traj):
        frame = XiFrame(traj, self.c)
        z = np.linspace(-1.9, -1.1, 7)
        h = 1e-5
        plus, minus = frame.evaluate_z(z + h), frame.evaluate_z(z - h)
        numeric = (plus.dz_dxi - minus.dz_dxi) / (plus.xi - minus.xi)
        np.testing.assert_allclose(frame.evaluate_z(z).d2z_dxi2, numeric, rtol=1e-6, atol=1e-9)

    def test_momentum_partial_at_fixed_xi(self, traj):
        h = 1e-4
        z = -1.5
        frame = XiFrame(traj, self.c)
        xi = float(frame.evaluate_z(z).xi)
        _, z_plus = XiFrame(traj.with_momentum(1.0 + h), self.c).t_of_xi(xi)
        _, z_minus = XiFrame(traj.with_momentum(1.0 - h), self.c).t_of_xi(xi)
        numeric = float(z_plus - z_minus) / (2 * h)
        assert float(frame.evaluate_z(z).dzdp_xi) == pytest.approx(numeric, rel=1e-5)

    def test_round_trip(self, traj):
        frame = XiFrame(traj, self.c)
        t = np.linspace(traj.t_min, 0.0, 25)
        t_back, z_back = frame.t_of_xi(frame.xi(t))
        np.testing.assert_allclose(t_back, t, atol=1e-10)
        np.testing.assert_allclose(z_back, traj.z_at(t), atol=1e-10)

    def test_span(self, traj):
        frame = XiFrame(traj, self.c)
        lo, hi = frame.xi_span()
        assert hi == 0.0
        assert lo == pytest.approx(frame.xi(traj.t_min), rel=1e-12)
        with pytest.raises(SpanError):
            frame.t_of_xi(0.5)
        with pytest.raises(SpanError):
            frame.t_of_xi(lo - 1.0)

    def test_broadcast_over_directions(self, traj):
        c = np.array([-0.5, 0.0, 0.5])[:, None]
        z = np.linspace(-2.0, -1.0, 5)
        k = XiFrame(traj, c).evaluate_z(z)
        assert k.d2z_dxi2.shape == (3, 5)
        single = XiFrame(traj, 0.5).evaluate_z(z)
        np.testing.assert_allclose(k.d2z_dxi2[2], single.d2z_dxi2)


class TestValidation:
    def test_rejects_unphysical_cosine(self, traj):
        with pytest.raises(ValueError):
            XiFrame(traj, 1.5)

    def test_array_cosine_cannot_invert(self, traj):
        with pytest.raises(ValueError):
            XiFrame(traj, np.array([0.1, 0.2])).t_of_xi(-1.0)

    def test_min_rate_positive_along_axis(self, traj):
        assert XiFrame(traj, 1.0).min_dxi_dt() == pytest.approx(1.0 - traj.velocity_out, rel=1e-12)
        assert XiFrame(traj, -1.0).min_dxi_dt() == pytest.approx(1.0 + traj.velocity_in, rel=1e-12)
