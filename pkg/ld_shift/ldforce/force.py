"""Lorentz-Dirac radiation-reaction force on the unperturbed worldline."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..numerics import ArrayLike, integrate
from ..trajectory import Trajectory, TrajectoryPoint

logger = logging.getLogger(__name__)


@dataclass
class LDForceSample:
    """F_LD evaluated both ways at one point (or aligned arrays of points)."""
    f_ld: ArrayLike
    form_a: ArrayLike
    form_b: ArrayLike
    t: Optional[ArrayLike] = None

    @property
    def discrepancy(self) -> ArrayLike:
        """|form_a - form_b|."""
        return np.abs(self.form_a - self.form_b)


def f_ld_at(point: TrajectoryPoint, alpha_c: float) -> LDForceSample:
    """
    F_LD = (2 alpha_c / 3) gamma d/dt(gamma^3 zddot).

    form_b is the expanded bracket gamma^4 zdddot + 3 gamma^6 zdot zddot^2;
    form_a multiplies gamma by d/dt(gamma^3 zddot) = gamma^3 zdddot + 3 gamma^5 zdot zddot^2.
    """
    g = point.gamma
    coupling = 2.0 * alpha_c / 3.0
    form_b = coupling * (g**4 * point.zdddot + 3.0 * g**6 * point.zdot * point.zddot**2)
    d_gamma3_zddot = g**3 * point.zdddot + 3.0 * g**5 * point.zdot * point.zddot**2
    form_a = coupling * g * d_gamma3_zddot
    return LDForceSample(f_ld=form_b, form_a=form_a, form_b=form_b, t=point.t)


def four_force(point: TrajectoryPoint, alpha_c: float) -> Tuple[ArrayLike, ArrayLike]:
    """
    (F^t, F^z) = F_LD (dz/dtau, dt/dtau); transverse components vanish.
    """
    f = f_ld_at(point, alpha_c).f_ld
    return f * point.gamma * point.zdot, f * point.gamma


def larmor_power(point: TrajectoryPoint, alpha_c: float) -> ArrayLike:
    """Radiated power (2 alpha_c / 3) gamma^6 zddot^2 for linear motion."""
    return 2.0 * alpha_c / 3.0 * point.gamma**6 * point.zddot**2


def force_at_z(traj: Trajectory, z: ArrayLike) -> ArrayLike:
    """F_LD at the moment the particle is at z."""
    return f_ld_at(traj.state(z), traj.particle.alpha_c).f_ld


def work_done(traj: Trajectory) -> Tuple[float, float]:
    """
    Work int F_LD zdot dt = int F_LD dz done by the force over the window.

    Returns:
        Tuple of (work, error estimate)
    """
    return integrate(
        lambda z: force_at_z(traj, z),
        traj.z_lo,
        traj.z_hi,
        traj.config.quad_rel_tol,
        points=[traj.profile.center],
        what="LD work",
    )


def larmor_energy(traj: Trajectory) -> Tuple[float, float]:
    """
    Energy int (2 alpha_c / 3) gamma^6 zddot^2 dt radiated over the window.

    Returns:
        Tuple of (energy, error estimate)
    """
    return integrate(
        lambda z: larmor_power(traj.state(z), traj.particle.alpha_c) / traj.state(z).zdot,
        traj.z_lo,
        traj.z_hi,
        traj.config.quad_rel_tol,
        points=[traj.profile.center],
        what="Larmor energy",
    )
