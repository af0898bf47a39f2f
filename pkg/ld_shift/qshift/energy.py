"""Radiated energy by the time-domain Larmor integral and by the emission spectrum."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..errors import ConvergenceError
from ..ldforce import larmor_energy
from ..numerics import gauss_legendre, integrate, relative_difference
from ..trajectory import Trajectory
from .amplitude import ibp_amplitudes
from .window import WindowFunction

logger = logging.getLogger(__name__)


@dataclass
class RadiatedEnergy:
    """Energy radiated over the force window, computed two independent ways."""
    larmor: float
    larmor_error: float
    spectral: float
    spectral_error: float
    k_max: float
    tail_fraction: float

    @property
    def relative_difference(self) -> float:
        return relative_difference(self.larmor, self.spectral)


def angular_density(
    traj: Trajectory, k: float, window: WindowFunction, order: Optional[int] = None
) -> float:
    """dE/dk: the spectral density integrated over cos(theta) by Gauss-Legendre."""
    c, w = gauss_legendre(order or traj.config.quad_order_angle)
    A = ibp_amplitudes(traj, k, c, window)
    density = k * k / (8.0 * math.pi**2) * (np.abs(A[1]) ** 2 - np.abs(A[0]) ** 2)
    return float(np.sum(density * w))


def _breakpoints(lo: float, hi: float, scale: float) -> List[float]:
    """Decades of the window's inverse roll-off that fall inside (lo, hi)."""
    points = []
    k = scale
    while k < hi:
        if k > lo:
            points.append(k)
        k *= 10.0
    return points


def radiated_energy(traj: Trajectory) -> RadiatedEnergy:
    """
    Radiated energy by two routes.

    Route 1 integrates the Larmor power (2 alpha_c / 3) gamma^6 zddot^2 over
    the force window. Route 2 integrates the windowed emission spectrum over
    k in (0, k_max] and cos(theta). The first segment runs to the inverse
    force duration; further segments double in length until one adds less
    than ``spectral_tail_tol`` of the running total.

    Raises:
        ConvergenceError: if the tail has not settled after ``max_k_doublings``
    """
    cfg = traj.config
    larmor, larmor_error = larmor_energy(traj)
    if traj.particle.alpha_c == 0.0:
        return RadiatedEnergy(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    window = WindowFunction.for_trajectory(traj, rolloff=cfg.energy_window_rolloff)
    seg_tol = 0.1 * cfg.spectral_tail_tol
    k0 = 1.0 / (traj.t_end - traj.t_start)

    def density(k: float) -> float:
        return angular_density(traj, k, window)

    total, error = integrate(
        density,
        0.0,
        k0,
        seg_tol,
        points=_breakpoints(0.0, k0, 1.0 / window.rolloff),
        what="soft spectrum",
    )
    lo, hi = k0, 2.0 * k0
    fraction = float("nan")
    for _ in range(cfg.max_k_doublings):
        segment, seg_error = integrate(density, lo, hi, seg_tol, what=f"spectrum on [{lo:.4g}, {hi:.4g}]")
        total += segment
        error += seg_error
        fraction = abs(segment) / abs(total) if total else 0.0
        logger.debug(f"Spectral segment [{lo:.4g}, {hi:.4g}]: {segment:.6e} (tail fraction {fraction:.2e})")
        if fraction <= cfg.spectral_tail_tol:
            result = RadiatedEnergy(
                larmor=larmor,
                larmor_error=larmor_error,
                spectral=total,
                spectral_error=error + abs(segment),
                k_max=hi,
                tail_fraction=fraction,
            )
            logger.info(
                f"Radiated energy: larmor={larmor:.10e}, spectral={total:.10e}, k_max={hi:.4g}"
            )
            return result
        lo, hi = hi, 2.0 * hi
    raise ConvergenceError(
        f"spectral tail not converged by k={lo:.4g} (last segment {fraction:.2e} of total)",
        tail_fraction=fraction,
    )
