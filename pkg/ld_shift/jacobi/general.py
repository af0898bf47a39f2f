"""Linear response for a general external force F(z, t).

Experimental: the emission-amplitude side assumes a static potential, so only
the classical routes exist here.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import SolverError, TurningPointError
from ..model import ParticleParams, SimulationConfig
from ..numerics import relative_difference

logger = logging.getLogger(__name__)

# force(z, t) -> (F, dF/dz, dF/dt)
ExternalForce = Callable[[float, float], Tuple[float, float, float]]


@dataclass
class GeneralResponse:
    """Classical shift under a general force, by two independent routes."""
    dz_green: float
    dz_oracle: float
    dP_oracle: float
    t_start: float
    z_start: float

    @property
    def relative_difference(self) -> float:
        return relative_difference(self.dz_green, self.dz_oracle)


def _local_terms(
    force: ExternalForce, particle: ParticleParams, z: float, P: float, t: float
) -> Tuple[float, float, float, float, float]:
    """zdot, A = 1/(m gamma^3), F, dF/dz and F_LD at one state."""
    m = particle.m
    if P <= 0.0:
        raise TurningPointError(f"momentum reached {P:.6g} at z={z:.6g}", z=z)
    energy = math.hypot(P, m)
    gamma = energy / m
    zdot = P / energy
    F, dFdz, dFdt = force(z, t)
    m_gamma3 = m * gamma**3
    zddot = F / m_gamma3
    zdddot = (dFdz * zdot + dFdt) / m_gamma3 - 3.0 * F * zdot * zddot / (m * gamma)
    f_ld = 2.0 * particle.alpha_c / 3.0 * (gamma**4 * zdddot + 3.0 * gamma**6 * zdot * zddot**2)
    return zdot, 1.0 / m_gamma3, F, dFdz, f_ld


def general_linear_response(
    force: ExternalForce,
    particle: ParticleParams,
    t_start: float,
    config: Optional[SimulationConfig] = None,
) -> GeneralResponse:
    """
    delta z(0) for motion under ``force``, which must vanish before ``t_start``.

    The unperturbed worldline is integrated backward from (z, P) = (0, p) at
    t = 0. The oracle then integrates the inhomogeneous linear system forward
    from t_start; the Green route integrates the pair seeded at t = 0 backward
    and uses dz_s(0) = -dz_0(s).
    """
    cfg = config or SimulationConfig()
    logger.warning("Time-dependent external force: experimental, classical routes only")
    ode = dict(method="DOP853", rtol=cfg.ode_rel_tol, atol=cfg.ode_abs_tol)

    def backward(t: float, y: np.ndarray) -> np.ndarray:
        zdot, A, F, dFdz, f_ld = _local_terms(force, particle, y[0], y[1], t)
        # y = (z, P, dz_0, dP_0, accumulated shift)
        return np.array([zdot, F, A * y[3], dFdz * y[2], f_ld * y[2]])

    back = solve_ivp(backward, (0.0, t_start), [0.0, particle.p, 0.0, 1.0, 0.0], **ode)
    if not back.success:
        raise SolverError(f"backward worldline failed: {back.message}")
    z0, P0 = float(back.y[0, -1]), float(back.y[1, -1])
    dz_green = float(back.y[4, -1])

    def forward(t: float, y: np.ndarray) -> np.ndarray:
        zdot, A, F, dFdz, f_ld = _local_terms(force, particle, y[0], y[1], t)
        return np.array([zdot, F, A * y[3], dFdz * y[2] + f_ld])

    fwd = solve_ivp(forward, (t_start, 0.0), [z0, P0, 0.0, 0.0], **ode)
    if not fwd.success:
        raise SolverError(f"forward linear response failed: {fwd.message}")

    result = GeneralResponse(
        dz_green=dz_green,
        dz_oracle=float(fwd.y[2, -1]),
        dP_oracle=float(fwd.y[3, -1]),
        t_start=t_start,
        z_start=z0,
    )
    logger.info(
        f"General force response: green={result.dz_green:.10e}, oracle={result.dz_oracle:.10e}"
    )
    return result
