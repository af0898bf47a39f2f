"""Closed-form kinematics from energy conservation."""

from typing import Optional, Sequence

import numpy as np

from ..errors import DomainError, TurningPointError
from ..model import ParticleParams, PotentialProfile, potential_eval
from ..numerics import ArrayLike
from .models import TrajectoryPoint


def velocity_from_energy(E: ArrayLike, V: ArrayLike, m: float) -> ArrayLike:
    """
    Velocity sqrt(1 - m^2/(E - V)^2) of a particle with kinetic energy E - V.

    Raises:
        TurningPointError: if E - V <= m
    """
    kinetic = np.asarray(E, dtype=float) - np.asarray(V, dtype=float)
    if np.any(kinetic <= m):
        raise TurningPointError(f"E - V = {float(np.min(kinetic)):.6g} does not exceed m = {m:.6g}")
    zdot = np.sqrt((kinetic - m) * (kinetic + m)) / kinetic
    return float(zdot) if zdot.ndim == 0 else zdot


def kinematics_at(
    profile: PotentialProfile, particle: ParticleParams, z: ArrayLike
) -> TrajectoryPoint:
    """
    Velocity, acceleration, jerk and Lorentz factor at position ``z``.

    Everything follows from gamma = (E - V)/m and the equation of motion
    m gamma^3 zddot = -V'(z); no numerical differentiation is involved.
    """
    m = particle.m
    v, vp, vpp = potential_eval(profile, z)
    kinetic = particle.energy - np.asarray(v)
    if np.any(kinetic <= m):
        i = int(np.argmin(kinetic))
        bad = float(np.asarray(z, dtype=float).flat[i])
        raise TurningPointError(f"turning point at z={bad:.6g}", z=bad)
    gamma = kinetic / m
    zdot = np.sqrt((kinetic - m) * (kinetic + m)) / kinetic
    m_gamma3 = m * gamma**3
    zddot = -vp / m_gamma3
    zdddot = -vpp * zdot / m_gamma3 + 3.0 * vp * zdot * zddot / (m * gamma)
    if np.ndim(z) == 0:
        return TrajectoryPoint(
            z=float(z), zdot=float(zdot), zddot=float(zddot), zdddot=float(zdddot), gamma=float(gamma)
        )
    return TrajectoryPoint(z=np.asarray(z, dtype=float), zdot=zdot, zddot=zddot, zdddot=zdddot, gamma=gamma)


def kappa(
    profile: PotentialProfile,
    particle: ParticleParams,
    z: ArrayLike,
    p0: Optional[float] = None,
    p_perp: Sequence[float] = (0.0, 0.0),
) -> ArrayLike:
    """
    Local classical z-momentum {[p0 - V(z)]^2 - m^2 - |p_perp|^2}^(1/2).

    ``p0`` defaults to the particle energy, in which case the result equals
    m gamma zdot for zero transverse momentum.

    Raises:
        DomainError: where the square-root argument is not positive
    """
    energy = particle.energy if p0 is None else p0
    v, _, _ = potential_eval(profile, z)
    kinetic = energy - np.asarray(v)
    transverse = float(np.dot(p_perp, p_perp))
    arg = (kinetic - particle.m) * (kinetic + particle.m) - transverse
    if np.any(arg <= 0.0):
        raise DomainError(f"classically forbidden: kappa^2 = {float(np.min(arg)):.6g}")
    result = np.sqrt(arg)
    return float(result) if result.ndim == 0 else result
