"""Unperturbed worldline, its xi reparameterization and momentum partials."""

from .builder import Trajectory, ZIntegral, build_trajectory
from .kinematics import kappa, kinematics_at, velocity_from_energy
from .models import TrajectoryPoint
from .oracle import integrate_worldline
from .partials import dzdp_at_z, dzdp_finite_difference, dzdp_fixed_t
from .xi_frame import XiFrame, XiKinematics, xi_frame

__all__ = [
    "Trajectory",
    "TrajectoryPoint",
    "XiFrame",
    "XiKinematics",
    "ZIntegral",
    "build_trajectory",
    "dzdp_at_z",
    "dzdp_finite_difference",
    "dzdp_fixed_t",
    "integrate_worldline",
    "kappa",
    "kinematics_at",
    "velocity_from_energy",
    "xi_frame",
]
