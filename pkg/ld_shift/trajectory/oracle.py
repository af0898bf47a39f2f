"""Time-stepping reference path, kept only as an oracle for the quadrature build."""

import logging

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import SolverError
from .builder import Trajectory

logger = logging.getLogger(__name__)


def integrate_worldline(traj: Trajectory, t_eval: np.ndarray, rel_tol: float = 1e-13) -> np.ndarray:
    """
    Integrate dz/dt = zdot(z) backward from z(0) = 0 with DOP853.

    Returns:
        Positions at ``t_eval`` (any order)
    """
    t_eval = np.asarray(t_eval, dtype=float)
    order = np.argsort(t_eval)[::-1]

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return np.array([traj.state(float(y[0])).zdot])

    sol = solve_ivp(
        rhs,
        (0.0, float(t_eval.min())),
        [0.0],
        method="DOP853",
        t_eval=t_eval[order],
        rtol=rel_tol,
        atol=1e-15,
    )
    if not sol.success:
        raise SolverError(f"worldline oracle failed: {sol.message}")
    logger.debug(f"Worldline oracle: {sol.nfev} evaluations")
    z = np.empty_like(t_eval)
    z[order] = sol.y[0]
    return z
