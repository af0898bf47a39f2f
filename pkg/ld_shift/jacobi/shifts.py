"""Classical position shift: Green's-function, closed-form and brute-force routes."""

import logging
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import SolverError
from ..ldforce import force_at_z
from ..model import potential_eval
from ..numerics import integrate
from ..trajectory import Trajectory
from .linear import JacobiBasis

logger = logging.getLogger(__name__)

Estimate = Union[float, Tuple[float, float]]


def _green_shift(traj: Trajectory, t: float, momentum: bool, basis: Optional[JacobiBasis]) -> Tuple[float, float]:
    if t <= traj.t_start:
        return 0.0, 0.0
    basis = basis or JacobiBasis(traj)
    z_top = traj.z_hi if t >= traj.t_end else traj.z_at(t)
    kernel = 1 if momentum else 0

    def integrand(z: float) -> float:
        s = traj.time_at(z)
        return force_at_z(traj, z) * basis.green(s, t)[kernel] / traj.state(z).zdot

    return integrate(
        integrand,
        traj.z_lo,
        z_top,
        traj.config.quad_rel_tol,
        points=[traj.profile.center],
        what="Green shift",
    )


def position_shift(
    traj: Trajectory, t: float, full_output: bool = False, basis: Optional[JacobiBasis] = None
) -> Estimate:
    """delta z(t) = int_{-inf}^t ds F_LD(s) dz_s(t)."""
    value, error = _green_shift(traj, t, momentum=False, basis=basis)
    return (value, error) if full_output else value


def momentum_shift(
    traj: Trajectory, t: float, full_output: bool = False, basis: Optional[JacobiBasis] = None
) -> Estimate:
    """delta P(t) = int_{-inf}^t ds F_LD(s) dP_s(t); zero before the force acts."""
    value, error = _green_shift(traj, t, momentum=True, basis=basis)
    return (value, error) if full_output else value


def classical_shift_green(
    traj: Trajectory, full_output: bool = False, basis: Optional[JacobiBasis] = None
) -> Estimate:
    """
    delta z = int dt F_LD(t) dz_t(0) over the force window.

    dz_t(0) comes from two basis solutions rather than one solve per node.
    """
    return position_shift(traj, 0.0, full_output=full_output, basis=basis)


def classical_shift_closed(traj: Trajectory, full_output: bool = False) -> Estimate:
    """
    delta z = -(zdot_0/m) int dt (int_0^t dt'/(gamma^3 zdot^2)) F_LD zdot.

    With zdot dt = dz the outer integral runs over the support in z and the
    inner one is the trajectory's cumulative inverse-velocity integral.
    """
    scale = traj.particle.final_velocity / traj.particle.m
    value, error = integrate(
        lambda z: traj.inverse_velocity_integral(z) * force_at_z(traj, z),
        traj.z_lo,
        traj.z_hi,
        traj.config.quad_rel_tol,
        points=[traj.profile.center],
        what="closed-form shift",
    )
    value, error = -scale * value, scale * error
    return (value, error) if full_output else value


def oracle_linear_response(
    traj: Trajectory,
    forcing: Optional[Callable[[float, float], float]] = None,
    max_step: float = np.inf,
) -> Tuple[float, float]:
    """
    Integrate d(dz)/dt = A dP, d(dP)/dt = B dz + F directly from the start of
    the force window, where both vanish, to t = 0.

    ``forcing(t, z)`` replaces F_LD; it must vanish outside the window.

    Returns:
        Tuple of (delta z(0), delta P(0))
    """
    cfg = traj.config
    m = traj.particle.m
    force = forcing or (lambda _t, z: force_at_z(traj, z))

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        z = float(y[0])
        s = traj.state(z)
        _, _, vpp = potential_eval(traj.profile, z)
        return np.array([s.zdot, y[2] / (m * s.gamma**3), -vpp * y[1] + force(t, z)])

    if traj.t_end > traj.t_start:
        sol = solve_ivp(
            rhs,
            (traj.t_start, traj.t_end),
            [traj.z_lo, 0.0, 0.0],
            method="DOP853",
            rtol=cfg.ode_rel_tol,
            atol=cfg.ode_abs_tol,
            max_step=max_step,
        )
        if not sol.success:
            raise SolverError(f"linear-response oracle failed: {sol.message}")
        dz_end, dP_end = float(sol.y[1, -1]), float(sol.y[2, -1])
        logger.debug(f"Linear-response oracle: {sol.nfev} evaluations")
    else:
        dz_end, dP_end = 0.0, 0.0
    free = 1.0 / (m * traj.gamma_out**3)
    return dz_end + free * dP_end * (0.0 - traj.t_end), dP_end
