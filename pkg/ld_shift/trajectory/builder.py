"""Unperturbed worldline built by quadrature of 1/zdot in z."""

import logging
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from ..errors import SpanError, TrajectoryError
from ..model import (
    ParticleParams,
    PotentialProfile,
    SimulationConfig,
    support,
    validate_scenario,
)
from ..numerics import ArrayLike, composite_rule, gauss_legendre
from .kinematics import kinematics_at
from .models import TrajectoryPoint

logger = logging.getLogger(__name__)

PANEL_ORDER = 12
NEWTON_STEPS = 3
MAX_REFINE_PASSES = 12
# Hermite derivatives cannot beat roundoff in z over short intervals
INTERPOLANT_TOL_FLOOR = 1e-10


class ZIntegral:
    """
    Running integral G(z) = int_z^{z_end} g(zeta) d zeta on a fixed panel grid.

    Panel totals are accumulated once; evaluation at an arbitrary z adds a
    Gauss-Legendre integral over the partial panel, so the result is exact to
    quadrature precision everywhere. Below the first edge g must be the
    constant ``tail``.
    """

    def __init__(
        self,
        integrand: Callable[[np.ndarray], np.ndarray],
        edges: np.ndarray,
        tail: float,
        order: int = PANEL_ORDER,
    ):
        self.edges = np.asarray(edges, dtype=float)
        self.order = order
        self.tail = tail
        self._g = integrand
        nodes, weights = composite_rule(self.edges, order)
        panels = (integrand(nodes) * weights).reshape(-1, order).sum(axis=1)
        self._from_edge = np.append(np.cumsum(panels[::-1])[::-1], 0.0)

    def __call__(self, z: ArrayLike) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        edges = self.edges
        below = z < edges[0]
        zc = np.clip(z, edges[0], edges[-1])
        i = np.clip(np.searchsorted(edges, zc, side="right") - 1, 0, len(edges) - 2)
        b = edges[i + 1]
        x, w = gauss_legendre(self.order)
        half = 0.5 * (b - zc)
        points = (0.5 * (b + zc))[..., None] + half[..., None] * x
        local = half * (self._g(points) @ w)
        return self._from_edge[i + 1] + local + np.where(below, self.tail * (edges[0] - z), 0.0)


class Trajectory:
    """
    Worldline of the charge with z(0) = 0, on the time span [t_min, 0].

    Time is an exact function of position, t(z) = -int_z^0 d zeta / zdot; the
    inverse z(t) starts from a C1 Hermite interpolant and is polished by
    Newton steps on t(z).
    """

    def __init__(
        self,
        profile: PotentialProfile,
        particle: ParticleParams,
        config: Optional[SimulationConfig] = None,
        t_min: Optional[float] = None,
    ):
        self.profile = profile
        self.particle = particle
        self.config = config or SimulationConfig()
        self.z_lo, self.z_hi = support(profile)

        incoming = kinematics_at(profile, particle, self.z_lo - 1.0)
        self.velocity_in = float(incoming.zdot)
        self.gamma_in = float(incoming.gamma)
        self.velocity_out = particle.final_velocity
        self.gamma_out = particle.energy / particle.m

        edges = self._grid()
        self._time = ZIntegral(lambda z: 1.0 / self.state(z).zdot, edges, tail=1.0 / self.velocity_in)
        tail_inverse = 1.0 / (self.gamma_in**3 * self.velocity_in**3)
        self._inverse = ZIntegral(self._inverse_integrand, edges, tail=tail_inverse)

        self.t_start = self.time_at(self.z_lo)
        self.t_end = self.time_at(self.z_hi)
        self.t_entry = self.time_at(-profile.Z1)
        self.t_exit = self.time_at(-profile.Z2)

        t_floor = self.t_start - self.config.t_margin
        if t_min is None or t_min > t_floor:
            if t_min is not None:
                logger.debug(f"t_min={t_min:.6g} extended to {t_floor:.6g}")
            t_min = t_floor
        self.t_min = float(t_min)
        self.z_min = self.z_lo - self.velocity_in * (self.t_start - self.t_min)

        self.interpolant = self._build_interpolant(edges)
        logger.info(
            f"Built trajectory: t in [{self.t_min:.6g}, 0], t_entry={self.t_entry:.6g}, "
            f"t_exit={self.t_exit:.6g}, {len(self.interpolant.x)} interpolation nodes"
        )

    def _grid(self) -> np.ndarray:
        cfg = self.config
        n_free = 4
        accel = np.linspace(self.z_lo, self.z_hi, cfg.grid_panels + 1)
        after = np.linspace(self.z_hi, 0.0, n_free + 1)
        return np.concatenate([accel, after[1:]])

    def _inverse_integrand(self, z: np.ndarray) -> np.ndarray:
        s = self.state(z)
        return 1.0 / (s.gamma**3 * s.zdot**3)

    def _build_interpolant(self, edges: np.ndarray) -> CubicHermiteSpline:
        tol = max(self.config.ode_rel_tol, INTERPOLANT_TOL_FLOOR)
        z_nodes = np.concatenate([[self.z_min], edges])
        for n_pass in range(MAX_REFINE_PASSES):
            t_nodes = self.time_at(z_nodes)
            if np.any(np.diff(t_nodes) <= 0.0):
                raise TrajectoryError("non-monotone z(t): time nodes are not increasing")
            spline = CubicHermiteSpline(t_nodes, z_nodes, self.state(z_nodes).zdot)

            z_mid = 0.5 * (z_nodes[:-1] + z_nodes[1:])
            t_mid = self.time_at(z_mid)
            zdot_mid = self.state(z_mid).zdot
            err_z = np.abs(spline(t_mid) - z_mid) / max(1.0, abs(self.z_min))
            err_v = np.abs(spline(t_mid, 1) - zdot_mid) / zdot_mid
            bad = (err_z > tol) | (err_v > tol)
            if not np.any(bad):
                logger.debug(f"Interpolant converged after {n_pass} refinement passes")
                return spline
            z_nodes = np.sort(np.concatenate([z_nodes, z_mid[bad]]))
        logger.warning(
            f"Interpolant not refined to {tol:.1e} after {MAX_REFINE_PASSES} passes "
            f"({len(z_nodes)} nodes); z(t) falls back on Newton polishing"
        )
        return spline

    # -- accessors -------------------------------------------------------

    @property
    def span(self) -> Tuple[float, float]:
        """Time span [t_min, 0]."""
        return self.t_min, 0.0

    @property
    def support_times(self) -> Tuple[float, float]:
        """Times bounding the interval where the force acts."""
        return self.t_start, self.t_end

    def state(self, z: ArrayLike) -> TrajectoryPoint:
        """Kinematic state at position z (no time attached)."""
        return kinematics_at(self.profile, self.particle, z)

    def time_at(self, z: ArrayLike) -> ArrayLike:
        """Exact time at which the particle passes position z."""
        t = -self._time(z)
        return float(t) if np.ndim(t) == 0 else t

    def _check_times(self, t: np.ndarray) -> None:
        slack = 1e-12 * max(1.0, abs(self.t_min))
        if np.any(t < self.t_min - slack) or np.any(t > slack):
            raise SpanError(
                f"time outside trajectory span [{self.t_min:.6g}, 0]: "
                f"[{float(np.min(t)):.6g}, {float(np.max(t)):.6g}]"
            )

    def z_at(self, t: ArrayLike) -> ArrayLike:
        """Position at time t, inverted from t(z) to quadrature precision."""
        t_arr = np.asarray(t, dtype=float)
        self._check_times(t_arr)
        t_arr = np.clip(t_arr, self.t_min, 0.0)
        z = self.interpolant(t_arr)
        for _ in range(NEWTON_STEPS):
            z = z - (self.time_at(z) - t_arr) * self.state(z).zdot
        z = np.where(t_arr == 0.0, 0.0, z)
        return float(z) if z.ndim == 0 else z

    def point_at(self, t: ArrayLike) -> TrajectoryPoint:
        """Full kinematic state at time t."""
        point = self.state(self.z_at(t))
        point.t = float(t) if np.ndim(t) == 0 else np.asarray(t, dtype=float)
        return point

    def inverse_velocity_integral(self, z: ArrayLike) -> ArrayLike:
        """int_0^t dt' / (gamma^3 zdot^2) at the time t the particle is at z."""
        value = -self._inverse(z)
        return float(value) if np.ndim(value) == 0 else value

    @cached_property
    def samples(self) -> TrajectoryPoint:
        """Uniform samples on [t_min, 0]."""
        return self.point_at(np.linspace(self.t_min, 0.0, self.config.sample_count))

    def with_momentum(self, p: float) -> "Trajectory":
        """Trajectory of the same scenario rebuilt at final momentum p, same t_min."""
        particle = self.particle.model_copy(update={"p": p})
        validate_scenario(self.profile, particle, self.config.delta_min)
        return Trajectory(self.profile, particle, self.config, t_min=self.t_min)

    def acceleration_nodes(self, panels: int, order: int = PANEL_ORDER) -> Tuple[np.ndarray, np.ndarray]:
        """Composite Gauss-Legendre nodes and weights in z over the support."""
        edges = np.linspace(self.z_lo, self.z_hi, panels + 1)
        return composite_rule(edges, order)


def build_trajectory(
    profile: PotentialProfile,
    particle: ParticleParams,
    t_min: Optional[float] = None,
    config: Optional[SimulationConfig] = None,
) -> Trajectory:
    """
    Validate the scenario and build its worldline on [t_min, 0].

    ``t_min`` is extended to ``t_entry - t_margin`` (or earlier for tanh tails)
    when it does not reach that far back.
    """
    config = config or SimulationConfig()
    validate_scenario(profile, particle, config.delta_min)
    return Trajectory(profile, particle, config, t_min=t_min)

