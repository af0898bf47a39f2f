"""Worldline reparameterized by the retarded coordinate xi = t - z cos(theta)."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import SpanError
from ..numerics import ArrayLike
from .builder import Trajectory
from .partials import dzdp_at_z

NEWTON_STEPS = 4


@dataclass
class XiKinematics:
    """Derivatives with respect to xi and momentum partials at fixed xi."""
    t: ArrayLike
    z: ArrayLike
    xi: ArrayLike
    dt_dxi: ArrayLike
    dz_dxi: ArrayLike
    d2t_dxi2: ArrayLike
    d2z_dxi2: ArrayLike
    dzdp_xi: ArrayLike
    dtdp_xi: ArrayLike
    dp_dt_dxi: ArrayLike
    dp_dz_dxi: ArrayLike

    @property
    def contraction(self) -> ArrayLike:
        """(d2X/dxi2) . d/dp(dX/dxi) with metric (+, -)."""
        return self.d2t_dxi2 * self.dp_dt_dxi - self.d2z_dxi2 * self.dp_dz_dxi


class XiFrame:
    """
    Accessors along the worldline in the xi parameterization.

    ``cos_theta`` may be an array that broadcasts against the positions
    passed to :meth:`evaluate_z`; inversion from xi needs a scalar.
    """

    def __init__(self, traj: Trajectory, cos_theta: ArrayLike):
        if np.any(np.abs(cos_theta) > 1.0):
            raise ValueError(f"|cos_theta| must not exceed 1 (got {cos_theta})")
        self.traj = traj
        self.cos_theta = cos_theta

    def evaluate_z(self, z: ArrayLike) -> XiKinematics:
        """All xi-frame quantities at the moment the particle is at z."""
        c = self.cos_theta
        s = self.traj.state(z)
        t = self.traj.time_at(z)
        q = 1.0 - s.zdot * c
        d2z = s.zddot / q**3
        dzdp_t, dzdp_rate = dzdp_at_z(self.traj, z)
        dzdp_xi = dzdp_t / q
        dp_dz = (dzdp_rate / q + dzdp_t * c * s.zddot / q**2) / q
        return XiKinematics(
            t=t,
            z=s.z,
            xi=t - s.z * c,
            dt_dxi=1.0 / q,
            dz_dxi=s.zdot / q,
            d2t_dxi2=c * d2z,
            d2z_dxi2=d2z,
            dzdp_xi=dzdp_xi,
            dtdp_xi=c * dzdp_xi,
            dp_dt_dxi=c * dp_dz,
            dp_dz_dxi=dp_dz,
        )

    def at_time(self, t: ArrayLike) -> XiKinematics:
        """xi-frame quantities at time t."""
        return self.evaluate_z(self.traj.z_at(t))

    def xi(self, t: ArrayLike) -> ArrayLike:
        """xi(t) = t - z(t) cos(theta)."""
        return t - self.traj.z_at(t) * self.cos_theta

    def xi_span(self) -> Tuple[float, float]:
        """Range of xi covered by the trajectory."""
        return self.traj.t_min - self.traj.z_min * float(self.cos_theta), 0.0

    def min_dxi_dt(self) -> float:
        """Smallest 1 - zdot cos(theta) over the trajectory samples."""
        zdot = self.traj.samples.zdot
        return float(np.min(1.0 - np.multiply.outer(np.atleast_1d(self.cos_theta), zdot)))

    def t_of_xi(self, xi: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """
        Invert xi -> (t, z) by Newton iteration on t(z) - z cos(theta) = xi.

        Raises:
            SpanError: for xi outside the trajectory's image
        """
        if np.ndim(self.cos_theta) != 0:
            raise ValueError("t_of_xi needs a scalar cos_theta")
        c = float(self.cos_theta)
        xi = np.asarray(xi, dtype=float)
        lo, hi = self.xi_span()
        slack = 1e-12 * max(1.0, abs(lo))
        if np.any(xi < lo - slack) or np.any(xi > hi + slack):
            raise SpanError(
                f"xi outside trajectory image [{lo:.6g}, {hi:.6g}]: "
                f"[{float(np.min(xi)):.6g}, {float(np.max(xi)):.6g}]"
            )
        traj = self.traj
        t_nodes = traj.interpolant.x
        z_nodes = traj.interpolant(t_nodes)
        z = np.interp(xi, t_nodes - z_nodes * c, z_nodes)
        for _ in range(NEWTON_STEPS):
            zdot = traj.state(z).zdot
            residual = traj.time_at(z) - z * c - xi
            z = z - residual * zdot / (1.0 - zdot * c)
        return np.asarray(traj.time_at(z)), np.asarray(z)


def xi_frame(traj: Trajectory, cos_theta: ArrayLike) -> XiFrame:
    """Reparameterized accessors of ``traj`` for direction cosine ``cos_theta``."""
    return XiFrame(traj, cos_theta)
