"""Emission amplitude of the classical current, in direct and integrated-by-parts form."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import ResolutionError, WindowError
from ..numerics import ArrayLike, composite_rule
from ..trajectory import Trajectory
from .window import ROLLOFF, ROLLOFF_MIRROR, WindowFunction

logger = logging.getLogger(__name__)

PANEL_ORDER = 16
# panels per oscillation period
PANELS_PER_PERIOD = 8
# richardson soft-limit check: k * xi_scale and k * rolloff
SOFT_K_SCALE = 1e-3
SOFT_ROLLOFF_LAMBDA = 500.0


@dataclass
class EmissionAmplitude:
    """A^mu(k, cos theta) for mu = t, z, with the window that regulated it."""
    k: float
    cos_theta: float
    A_t: complex
    A_z: complex
    window: WindowFunction
    form: str = "ibp"

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.A_t, self.A_z])

    def difference(self, other: "EmissionAmplitude") -> float:
        """Relative distance between two amplitudes at the same (k, cos theta)."""
        scale = max(np.linalg.norm(self.vector), np.linalg.norm(other.vector))
        if scale == 0.0:
            return 0.0
        return float(np.linalg.norm(self.vector - other.vector) / scale)


def spectral_density(amplitude: EmissionAmplitude) -> float:
    """Energy per dk per d cos(theta): k^2/(8 pi^2) (|A_z|^2 - |A_t|^2)."""
    k = amplitude.k
    return k * k / (8.0 * math.pi**2) * (abs(amplitude.A_z) ** 2 - abs(amplitude.A_t) ** 2)


def four_velocity_xi(zdot: float, cos_theta: ArrayLike) -> np.ndarray:
    """dX/dxi = (1, zdot) / (1 - zdot cos theta), stacked on the first axis."""
    q = 1.0 - zdot * np.asarray(cos_theta)
    return np.stack([1.0 / q, zdot / q])


def _panel_count(k: float, length: float, base: int) -> int:
    return max(base, math.ceil(PANELS_PER_PERIOD * k * length / (2.0 * math.pi)))


def _image_length(traj: Trajectory, cos_theta: np.ndarray) -> float:
    """Longest xi image of the force window among the directions."""
    xi_lo = traj.t_start - traj.z_lo * cos_theta
    xi_hi = traj.t_end - traj.z_hi * cos_theta
    return float(np.max(xi_hi - xi_lo))


def _acceleration_nodes(
    traj: Trajectory, k: float, cos_theta: np.ndarray, base: int
) -> Tuple[int, Tuple[np.ndarray, np.ndarray]]:
    """z nodes over the support fine enough for the fastest phase among the directions."""
    length = _image_length(traj, cos_theta)
    panels = _panel_count(k, length, base)
    _budget(traj, length, panels)
    return panels, traj.acceleration_nodes(panels, PANEL_ORDER)


def _check_window(traj: Trajectory, cos_theta: np.ndarray, window: WindowFunction) -> None:
    lo = float(np.min(traj.t_start - traj.z_lo * cos_theta))
    hi = float(np.max(traj.t_end - traj.z_hi * cos_theta))
    if not window.covers(lo, hi):
        raise WindowError(
            f"window plateau [{window.xi_a:.6g}, {window.xi_b:.6g}] does not cover "
            f"the acceleration image [{lo:.6g}, {hi:.6g}]"
        )


def _budget(traj: Trajectory, length: float, panels: int) -> None:
    """Raise if the oscillatory integrand over ``length`` needs too many panels."""
    limit = traj.config.max_panels
    if panels > limit:
        suggested = limit * 2.0 * math.pi / (PANELS_PER_PERIOD * length)
        raise ResolutionError(
            f"{panels} panels needed, budget is {limit}; use k <= {suggested:.4g}",
            suggested_k_max=suggested,
        )


def ibp_amplitudes(
    traj: Trajectory, k: float, cos_theta: ArrayLike, window: WindowFunction
) -> np.ndarray:
    """
    Integrated-by-parts amplitudes for a batch of directions.

    A = (e / ik) [ int dt (c, 1) zddot / (1 - zdot c)^2 e^{ik xi}
                   + u_in chi'_L(k) + u_out chi'_R(k) ]
    where only the roll-off parts of chi' contribute and u is dX/dxi in the
    flat regions.

    Returns:
        Complex array of shape (2, n_directions) holding (A_t, A_z)
    """
    c = np.atleast_1d(np.asarray(cos_theta, dtype=float))
    _check_window(traj, c, window)
    if k <= 0.0:
        raise ValueError("amplitude needs k > 0")
    e = traj.particle.charge
    _, (z, wz) = _acceleration_nodes(traj, k, c, traj.config.grid_panels // 4)

    s = traj.state(z)
    xi = traj.time_at(z) - np.multiply.outer(c, z)
    q = 1.0 - np.multiply.outer(c, s.zdot)
    kernel = s.zddot / (q**2 * s.zdot) * np.exp(1j * k * xi) * wz
    accel_z = kernel.sum(axis=1)
    accel = np.stack([c * accel_z, accel_z])

    left, right = window.rolloff_transforms(k)
    u_in = four_velocity_xi(traj.velocity_in, c)
    u_out = four_velocity_xi(traj.velocity_out, c)
    return e / (1j * k) * (accel + u_in * left + u_out * right)


def amplitude_ibp(
    traj: Trajectory, k: float, cos_theta: float, window: Optional[WindowFunction] = None
) -> EmissionAmplitude:
    """Amplitude after integration by parts; the acceleration part is compact."""
    window = window or WindowFunction.for_trajectory(traj)
    A = ibp_amplitudes(traj, k, cos_theta, window)[:, 0]
    return EmissionAmplitude(k=k, cos_theta=cos_theta, A_t=complex(A[0]), A_z=complex(A[1]), window=window)


def _segment_integral(traj: Trajectory, k: float, a: float, b: float, chi, base: int) -> Tuple[complex, int]:
    """int_a^b chi(xi) e^{ik xi} d xi by composite Gauss-Legendre."""
    if b <= a:
        return 0.0j, 0
    panels = _panel_count(k, b - a, base)
    _budget(traj, b - a, panels)
    xi, w = composite_rule(np.linspace(a, b, panels + 1), PANEL_ORDER)
    return complex(np.sum(chi(xi) * np.exp(1j * k * xi) * w)), panels


def amplitude_direct(
    traj: Trajectory, k: float, cos_theta: float, window: Optional[WindowFunction] = None
) -> EmissionAmplitude:
    """
    A = -e int d xi chi(xi) dX/dxi e^{ik xi}, integrated numerically over the
    whole window.

    In the flat regions dX/dxi is constant; over the force window the
    integral is taken in z with d xi (dX/dxi) = (1, zdot) dt.
    """
    window = window or WindowFunction.for_trajectory(traj)
    c = float(cos_theta)
    _check_window(traj, np.array([c]), window)
    if k <= 0.0:
        raise ValueError("amplitude needs k > 0")
    e = traj.particle.charge
    w = window.rolloff
    a, b = window.xi_a, window.xi_b
    xi_s = traj.t_start - traj.z_lo * c
    xi_e = traj.t_end - traj.z_hi * c
    base = 4

    def left_roll(xi: np.ndarray) -> np.ndarray:
        return ROLLOFF((xi - a + w) / w)

    def right_roll(xi: np.ndarray) -> np.ndarray:
        return ROLLOFF_MIRROR((xi - b) / w)

    flat = np.ones_like
    pieces = [
        _segment_integral(traj, k, a - w, a, left_roll, base),
        _segment_integral(traj, k, a, xi_s, flat, base),
        _segment_integral(traj, k, xi_e, b, flat, base),
        _segment_integral(traj, k, b, b + w, right_roll, base),
    ]
    before = pieces[0][0] + pieces[1][0]
    after = pieces[2][0] + pieces[3][0]

    panels, (z, wz) = _acceleration_nodes(traj, k, np.array([c]), traj.config.grid_panels // 4)
    lo, hi = window.extent
    _budget(traj, hi - lo, panels + sum(n for _, n in pieces))
    s = traj.state(z)
    phase = np.exp(1j * k * (traj.time_at(z) - z * c)) * wz
    accel = np.array([np.sum(phase / s.zdot), np.sum(phase)])

    u_in = four_velocity_xi(traj.velocity_in, c)
    u_out = four_velocity_xi(traj.velocity_out, c)
    A = -e * (u_in * before + accel + u_out * after)
    return EmissionAmplitude(
        k=k, cos_theta=c, A_t=complex(A[0]), A_z=complex(A[1]), window=window, form="direct"
    )


def soft_limit(traj: Trajectory, cos_theta: float) -> np.ndarray:
    """e [dX/dxi|_out - dX/dxi|_in]; k A(k) tends to -i times this."""
    e = traj.particle.charge
    return e * (four_velocity_xi(traj.velocity_out, cos_theta) - four_velocity_xi(traj.velocity_in, cos_theta))


def soft_limit_extrapolation(traj: Trajectory, cos_theta: float, k: Optional[float] = None) -> np.ndarray:
    """
    Richardson extrapolation of i k A(k) to k = 0 from k and k/2.

    The window roll-off is stretched to many wavelengths so the soft regime
    is reached before the window cuts the integral off.
    """
    base = WindowFunction.for_trajectory(traj)
    xi_scale = max(abs(base.xi_a), abs(base.xi_b))
    k = SOFT_K_SCALE / xi_scale if k is None else k
    window = WindowFunction.for_trajectory(traj, rolloff=SOFT_ROLLOFF_LAMBDA / k)
    coarse = 1j * k * ibp_amplitudes(traj, k, cos_theta, window)[:, 0]
    fine = 1j * 0.5 * k * ibp_amplitudes(traj, 0.5 * k, cos_theta, window)[:, 0]
    return 2.0 * fine - coarse
