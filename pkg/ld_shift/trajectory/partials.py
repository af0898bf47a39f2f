"""Partial derivatives of the worldline with respect to the final momentum."""

from typing import Optional, Tuple

import numpy as np

from ..numerics import ArrayLike, central_difference
from .builder import Trajectory


def dzdp_at_z(traj: Trajectory, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    (dz/dp)_t and its time derivative at the moment the particle is at z.

    Differentiating t(z) = -int_z^0 d zeta / zdot at fixed t gives
    (dz/dp)_t = zdot(t) (zdot_0 / m) int_0^t dt' / (gamma^3 zdot^2).

    Returns:
        Tuple of ((dz/dp)_t, d/dt (dz/dp)_t)
    """
    s = traj.state(z)
    scale = traj.particle.final_velocity / traj.particle.m
    integral = traj.inverse_velocity_integral(z)
    value = s.zdot * scale * integral
    rate = s.zddot * scale * integral + scale / (s.gamma**3 * s.zdot)
    return value, rate


def dzdp_fixed_t(traj: Trajectory, t: ArrayLike) -> ArrayLike:
    """(dz/dp)_t at time t; zero at t = 0."""
    value, _ = dzdp_at_z(traj, traj.z_at(t))
    return value


def dzdp_finite_difference(
    traj: Trajectory, t: ArrayLike, h: Optional[float] = None, richardson: Optional[bool] = None
) -> ArrayLike:
    """
    Central difference [z_{p+h}(t) - z_{p-h}(t)] / 2h over rebuilt trajectories.

    The stencil trajectories share z(0) = 0 and the base trajectory's t_min.
    """
    cfg = traj.config
    p = traj.particle.p
    step = cfg.fd_step_rel * p if h is None else h
    extrapolate = cfg.fd_richardson if richardson is None else richardson
    t_arr = np.asarray(t, dtype=float)
    return central_difference(
        lambda q: np.asarray(traj.with_momentum(q).z_at(t_arr)), p, step, extrapolate
    )
