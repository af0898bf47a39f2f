"""Position shift from the emission amplitude, in reduced and angular form."""

import logging
from enum import Enum
from typing import Callable, List, Tuple, Union

import numpy as np

from ..errors import ConvergenceError
from ..ldforce import force_at_z
from ..numerics import composite_rule, gauss_legendre, integrate
from ..trajectory import Trajectory, XiFrame, dzdp_fixed_t
from .amplitude import four_velocity_xi

logger = logging.getLogger(__name__)

Estimate = Union[float, Tuple[float, float]]
# inner(cos_theta, panels) -> int d xi contraction, one value per direction
InnerIntegral = Callable[[np.ndarray, int], np.ndarray]

INNER_ORDER = 16
MAX_ANGLE_ORDER = 1024


class DerivativeMode(str, Enum):
    """How d/dp at fixed xi is realized in the angular route."""
    ANALYTIC = "analytic-dp"
    FINITE_DIFFERENCE = "fd-dp"


def quantum_shift_reduced(traj: Trajectory, full_output: bool = False) -> Estimate:
    """
    delta z_Q = -int dt F_LD (dz/dp)_t, integrated in t over the force window.
    """

    def integrand(t: float) -> float:
        return force_at_z(traj, traj.z_at(t)) * dzdp_fixed_t(traj, t)

    center = traj.profile.center
    value, error = integrate(
        integrand,
        traj.t_start,
        traj.t_end,
        traj.config.quad_rel_tol,
        points=[traj.time_at(center)] if traj.z_lo < center < traj.z_hi else None,
        what="reduced quantum shift",
    )
    return (-value, error) if full_output else -value


def _analytic_inner(traj: Trajectory) -> InnerIntegral:
    """Chain-rule partials from the single trajectory, integrated in z."""

    def inner(cos_theta: np.ndarray, panels: int) -> np.ndarray:
        z, w = traj.acceleration_nodes(panels, INNER_ORDER)
        c = cos_theta[:, None]
        kin = XiFrame(traj, c).evaluate_z(z)
        zdot = traj.state(z).zdot
        # d xi = (1 - zdot c) dz / zdot
        return np.sum(kin.contraction * (1.0 - c * zdot) / zdot * w, axis=-1)

    return inner


def _finite_difference_inner(traj: Trajectory) -> InnerIntegral:
    """d/dp(dX/dxi) differenced across trajectories rebuilt at p +- h."""
    cfg = traj.config
    p = traj.particle.p
    h = cfg.fd_step_rel * p
    steps = [h, 0.5 * h] if cfg.fd_richardson else [h]
    stencils: List[Tuple[float, Trajectory, Trajectory]] = [
        (s, traj.with_momentum(p + s), traj.with_momentum(p - s)) for s in steps
    ]
    logger.debug(f"fd-dp stencils built at h={steps}")

    def velocity(member: Trajectory, c: float, xi: np.ndarray) -> np.ndarray:
        _, z = XiFrame(member, c).t_of_xi(xi)
        return four_velocity_xi(member.state(z).zdot, c)

    def derivative(c: float, xi: np.ndarray) -> np.ndarray:
        estimates = [
            (velocity(plus, c, xi) - velocity(minus, c, xi)) / (2.0 * s) for s, plus, minus in stencils
        ]
        if len(estimates) == 1:
            return estimates[0]
        return (4.0 * estimates[1] - estimates[0]) / 3.0

    def inner(cos_theta: np.ndarray, panels: int) -> np.ndarray:
        out = np.empty(cos_theta.shape)
        for i, c in enumerate(cos_theta):
            c = float(c)
            edges = np.linspace(traj.t_start - traj.z_lo * c, traj.t_end - traj.z_hi * c, panels + 1)
            xi, w = composite_rule(edges, INNER_ORDER)
            frame = XiFrame(traj, c)
            _, z = frame.t_of_xi(xi)
            base = frame.evaluate_z(z)
            dp_t, dp_z = derivative(c, xi)
            out[i] = np.sum((base.d2t_dxi2 * dp_t - base.d2z_dxi2 * dp_z) * w)
        return out

    return inner


def _converged_inner(
    traj: Trajectory, inner: InnerIntegral, cos_theta: np.ndarray, rel_tol: float
) -> Tuple[np.ndarray, float]:
    """Double the xi panels until every direction's inner integral is stable."""
    max_panels = traj.config.max_panels
    panels = max(8, traj.config.grid_panels // 8)
    coarse = inner(cos_theta, panels)
    while True:
        if 2 * panels > max_panels:
            raise ConvergenceError(f"inner xi integral not converged within {max_panels} panels")
        panels *= 2
        fine = inner(cos_theta, panels)
        change = float(np.max(np.abs(fine - coarse)))
        if change <= rel_tol * float(np.max(np.abs(fine))):
            return fine, change
        coarse = fine


def quantum_shift_angular(
    traj: Trajectory, mode: Union[str, DerivativeMode] = DerivativeMode.ANALYTIC, full_output: bool = False
) -> Estimate:
    """
    delta z_Q = -(alpha_c / 4 pi) int d Omega int d xi (d2X^mu/dxi2) d/dp(dX_mu/dxi).

    The azimuth contributes 2 pi, so the outer integral is a Gauss-Legendre
    rule in cos(theta) whose order doubles until stable. The inner integral
    runs over the xi image of the force window. No window function enters.

    Raises:
        ConvergenceError: if either quadrature fails to settle
        SpanError: if fd-dp resampling leaves a stencil trajectory's span
    """
    mode = DerivativeMode(mode)
    cfg = traj.config
    if mode is DerivativeMode.ANALYTIC:
        inner = _analytic_inner(traj)
        tol = cfg.quad_rel_tol
    else:
        inner = _finite_difference_inner(traj)
        tol = 1e-2 * cfg.fd_route_rel_tol
    prefactor = -0.5 * traj.particle.alpha_c

    def angular_sum(order: int) -> Tuple[float, float]:
        c, w = gauss_legendre(order)
        values, inner_change = _converged_inner(traj, inner, np.asarray(c), tol)
        return float(prefactor * np.sum(values * w)), 2.0 * abs(prefactor) * inner_change

    order = cfg.quad_order_angle
    value, _ = angular_sum(order)
    refined, change = value, float("nan")
    while 2 * order <= MAX_ANGLE_ORDER:
        order *= 2
        refined, inner_error = angular_sum(order)
        change = abs(refined - value)
        if change <= tol * abs(refined):
            logger.debug(f"Angular route ({mode.value}) converged at order {order}")
            error = change + inner_error
            return (refined, error) if full_output else refined
        value = refined
    raise ConvergenceError(
        f"angular quadrature not converged at order {order} ({mode.value})",
        tail_fraction=change / abs(refined) if refined else float("nan"),
    )
